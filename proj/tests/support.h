#ifndef COUNTERPLAN_TEST_SUPPORT_H
#define COUNTERPLAN_TEST_SUPPORT_H

#include "counterplan/strips.h"
#include "counterplan/task.h"

#include <algorithm>
#include <cstdio>
#include <random>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testing_support {

inline std::string fixture_path(const std::string &rel) {
    return std::string(COUNTERPLAN_FIXTURES) + "/" + rel;
}

inline std::string read_fixture(const std::string &rel) {
    std::ifstream in(fixture_path(rel));
    if (!in)
        throw std::runtime_error("missing fixture " + rel);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Hand-built tasks with named facts and no twins.
struct TinyBuilder {
    std::vector<std::string> names;

    counterplan::FactId fact(const std::string &n) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == n)
                return static_cast<counterplan::FactId>(i);
        names.push_back(n);
        return static_cast<counterplan::FactId>(names.size() - 1);
    }
    counterplan::Action action(const std::string &name, std::vector<std::string> pre,
                               std::vector<std::string> add, std::vector<std::string> del, int cost = 1) {
        counterplan::Action a;
        a.name = name;
        a.cost = cost;
        for (auto &p : pre)
            a.pre.push_back(fact(p));
        for (auto &p : add)
            a.add.push_back(fact(p));
        for (auto &p : del)
            a.del.push_back(fact(p));
        return a;
    }
    counterplan::FactTablePtr table() const {
        return std::make_shared<counterplan::FactTable>(
            names, std::vector<counterplan::FactId>(names.size(), counterplan::kNoFact));
    }
    counterplan::State state(std::vector<std::string> facts) {
        std::vector<counterplan::FactId> ids;
        for (auto &f : facts)
            ids.push_back(fact(f));
        return counterplan::State(names.size(), ids);
    }
};

// n x n grid with unit moves between 4-neighbours; facts "(at x-y)".
struct Grid {
    TinyBuilder b;
    std::vector<counterplan::Action> actions;
    int n;

    explicit Grid(int n, const std::vector<std::string> &blocked = {}) : n(n) {
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y)
                b.fact(cell(x, y));
        auto open = [&](int x, int y) {
            if (x < 1 || y < 1 || x > n || y > n)
                return false;
            for (const auto &c : blocked)
                if (c == name(x, y))
                    return false;
            return true;
        };
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y) {
                if (!open(x, y))
                    continue;
                const int d[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                for (auto &v : d)
                    if (open(x + v[0], y + v[1]))
                        actions.push_back(b.action("(move " + name(x, y) + " " + name(x + v[0], y + v[1]) + ")",
                                                   {cell(x, y)}, {cell(x + v[0], y + v[1])}, {cell(x, y)}));
            }
        std::sort(actions.begin(), actions.end(),
                  [](const auto &p, const auto &q) { return p.name < q.name; });
    }
    static std::string name(int x, int y) { return std::to_string(x) + "-" + std::to_string(y); }
    static std::string cell(int x, int y) { return "(at " + name(x, y) + ")"; }
    counterplan::FactId at(int x, int y) { return b.fact(cell(x, y)); }
    counterplan::State state_at(int x, int y) { return b.state({cell(x, y)}); }
    counterplan::PlanningTask task(int sx, int sy, int gx, int gy) {
        return {b.table(), actions, state_at(sx, sy), {{at(gx, gy), true}}};
    }
};

// Atoms with consistent "(not a)" twins: atom i is fact 2i, its twin 2i+1.
// Literal strings are "a" or "!a".
struct TwinBuilder {
    std::vector<std::string> atoms;

    int atom(const std::string &a) {
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] == a)
                return static_cast<int>(i);
        atoms.push_back(a);
        return static_cast<int>(atoms.size() - 1);
    }
    counterplan::FactId fact(const std::string &lit) {
        return lit[0] == '!' ? 2 * atom(lit.substr(1)) + 1 : 2 * atom(lit);
    }
    counterplan::Literal literal(const std::string &lit) {
        return {2 * atom(lit[0] == '!' ? lit.substr(1) : lit), lit[0] != '!'};
    }
    counterplan::Action action(const std::string &name, std::vector<std::string> pre,
                               std::vector<std::string> effects, int cost = 1) {
        counterplan::Action a;
        a.name = name;
        a.cost = cost;
        for (auto &p : pre)
            a.pre.push_back(fact(p));
        for (auto &e : effects) {
            counterplan::FactId f = fact(e);
            a.add.push_back(f);
            a.del.push_back(f ^ 1);
        }
        std::sort(a.pre.begin(), a.pre.end());
        std::sort(a.add.begin(), a.add.end());
        std::sort(a.del.begin(), a.del.end());
        return a;
    }
    counterplan::FactTablePtr table() const {
        std::vector<std::string> names;
        std::vector<counterplan::FactId> twins;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            names.push_back("(" + atoms[i] + ")");
            names.push_back("(not (" + atoms[i] + "))");
            twins.push_back(static_cast<counterplan::FactId>(2 * i + 1));
            twins.push_back(static_cast<counterplan::FactId>(2 * i));
        }
        return std::make_shared<counterplan::FactTable>(names, twins);
    }
    // Listed atoms true, every other atom false.
    counterplan::State state(const std::vector<std::string> &true_atoms) {
        for (auto &a : true_atoms)
            atom(a);
        std::vector<counterplan::FactId> ids;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            bool on = std::find(true_atoms.begin(), true_atoms.end(), atoms[i]) != true_atoms.end();
            ids.push_back(static_cast<counterplan::FactId>(2 * i + (on ? 0 : 1)));
        }
        return counterplan::State(2 * atoms.size(), ids);
    }
};

inline void sort_by_name(std::vector<counterplan::Action> &actions) {
    std::sort(actions.begin(), actions.end(), [](const auto &p, const auto &q) { return p.name < q.name; });
}

// Random two-agent task over `num_atoms` twinned atoms. Seeker actions are
// "(sNN)", preventer actions "(pNN)"; costs are 1 or 2.
inline counterplan::CounterplanningTask random_two_agent(std::mt19937_64 &rng, int num_atoms, int num_seek,
                                                         int num_prev, int num_goals) {
    TwinBuilder b;
    for (int i = 0; i < num_atoms; ++i)
        b.atom("q" + std::to_string(i));
    auto lit = [&]() {
        std::string a = "q" + std::to_string(rng() % num_atoms);
        return rng() % 3 == 0 ? "!" + a : a;
    };
    auto lits = [&](int k) {
        std::vector<std::string> out;
        std::vector<std::string> used;
        for (int i = 0; i < k; ++i) {
            std::string l = lit();
            std::string base = l[0] == '!' ? l.substr(1) : l;
            if (std::find(used.begin(), used.end(), base) != used.end())
                continue;
            used.push_back(base);
            out.push_back(l);
        }
        return out;
    };
    counterplan::CounterplanningTask t;
    t.name = "random";
    auto make = [&](const char *prefix, int n, std::vector<counterplan::Action> &out) {
        for (int i = 0; i < n; ++i) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "(%s%02d)", prefix, i);
            out.push_back(b.action(buf, lits(1 + rng() % 2), lits(1 + rng() % 2), 1 + (rng() % 4 == 0)));
        }
        sort_by_name(out);
    };
    make("s", num_seek, t.seek_actions);
    make("p", num_prev, t.prev_actions);
    std::vector<std::string> on;
    for (int i = 0; i < num_atoms; ++i)
        if (rng() % 2)
            on.push_back("q" + std::to_string(i));
    t.init = b.state(on);
    for (int g = 0; g < num_goals; ++g) {
        counterplan::Goal goal;
        for (auto &l : lits(1 + rng() % 2))
            goal.push_back(b.literal(l));
        std::sort(goal.begin(), goal.end());
        t.candidates.push_back(goal);
    }
    t.facts = b.table();
    return t;
}

}  // namespace testing_support

#endif

#include "counterplan/bench.h"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

using namespace std;

namespace counterplan {

namespace {

const char *const kPoliceDomain = R"((define (domain police-control)
  (:requirements :strips :typing :negative-preconditions)
  (:types cell station)
  (:predicates
    (adj ?a - cell ?b - cell)
    (free ?c - cell)
    (seek-at ?c - cell)
    (prev-at ?c - cell)
    (booth ?c - cell)
    (tapped ?c - cell)
    (called)
    (station-at ?s - station ?c - cell)
    (police-station ?c - cell)
    (escaped ?s - station))

  (:action move
    :agent seek
    :parameters (?from - cell ?to - cell)
    :precondition (and (seek-at ?from) (adj ?from ?to) (free ?to))
    :effect (and (seek-at ?to) (not (seek-at ?from))))

  (:action call
    :agent seek
    :parameters (?c - cell)
    :precondition (and (seek-at ?c) (booth ?c) (not (tapped ?c)))
    :effect (called))

  (:action escape
    :agent seek
    :parameters (?s - station ?c - cell)
    :precondition (and (seek-at ?c) (station-at ?s ?c) (called))
    :effect (escaped ?s))

  (:action move
    :agent prev
    :parameters (?from - cell ?to - cell)
    :precondition (and (prev-at ?from) (adj ?from ?to))
    :effect (and (prev-at ?to) (not (prev-at ?from)) (not (free ?to))))

  (:action set-control
    :agent prev
    :parameters (?at - cell ?c - cell)
    :precondition (and (prev-at ?at) (adj ?at ?c))
    :effect (not (free ?c)))

  (:action tap-booth
    :agent prev
    :parameters (?at - cell ?c - cell)
    :precondition (and (prev-at ?at) (police-station ?at) (booth ?c))
    :effect (tapped ?c)))
)";

const char *const kBlocksDomain = R"((define (domain painted-blocks-words)
  (:requirements :strips :typing :negative-preconditions)
  (:types block room)
  (:predicates
    (on ?a - block ?b - block)
    (ontable ?a - block)
    (clear ?a - block)
    (holding ?a - block)
    (handempty)
    (painted ?a - block)
    (connected ?a - room ?b - room)
    (prev-in ?r - room)
    (paint-in ?r - room)
    (has-paint)
    (workshop ?r - room))

  (:action pick-up
    :agent seek
    :parameters (?b - block)
    :precondition (and (clear ?b) (ontable ?b) (handempty) (not (painted ?b)))
    :effect (and (holding ?b) (not (ontable ?b)) (not (clear ?b)) (not (handempty))))

  (:action put-down
    :agent seek
    :parameters (?b - block)
    :precondition (holding ?b)
    :effect (and (ontable ?b) (clear ?b) (handempty) (not (holding ?b))))

  (:action stack
    :agent seek
    :parameters (?a - block ?b - block)
    :precondition (and (holding ?a) (clear ?b) (not (painted ?b)))
    :effect (and (on ?a ?b) (clear ?a) (handempty) (not (holding ?a)) (not (clear ?b))))

  (:action unstack
    :agent seek
    :parameters (?a - block ?b - block)
    :precondition (and (on ?a ?b) (clear ?a) (handempty) (not (painted ?a)))
    :effect (and (holding ?a) (clear ?b) (not (on ?a ?b)) (not (clear ?a)) (not (handempty))))

  (:action go
    :agent prev
    :parameters (?from - room ?to - room)
    :precondition (and (prev-in ?from) (connected ?from ?to))
    :effect (and (prev-in ?to) (not (prev-in ?from))))

  (:action take-paint
    :agent prev
    :parameters (?r - room)
    :precondition (and (prev-in ?r) (paint-in ?r))
    :effect (has-paint))

  (:action paint
    :agent prev
    :parameters (?b - block ?r - room)
    :precondition (and (prev-in ?r) (workshop ?r) (has-paint) (clear ?b))
    :effect (painted ?b)))
)";

string problem_text(const string &name, const string &domain, const string &agent, const string &objects,
                    const vector<string> &init, const string &goal) {
    ostringstream out;
    out << "(define (problem " << name << "-" << agent << ")\n  (:domain " << domain << ")\n  (:agent " << agent
        << ")\n  (:objects " << objects << ")\n  (:init";
    for (const string &f : init)
        out << "\n    " << f;
    out << ")";
    if (!goal.empty())
        out << "\n  (:goal " << goal << ")";
    out << ")\n";
    return out.str();
}

// Grounds the bundle and requires every candidate to be solvable for the seeker alone.
bool all_candidates_solvable(const TaskBundle &b, const SearchBudget &budget) {
    CounterplanningTask t = build_task(b);
    for (size_t g = 0; g < t.candidates.size(); ++g)
        if (solve_optimal(t.seek_task(static_cast<int>(g)), budget).status != SearchStatus::solved)
            return false;
    return true;
}

template <class T>
const T &pick(mt19937_64 &rng, const vector<T> &v) {
    return v[uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
}

}  // namespace

const char *domain_name(Domain d) { return d == Domain::police_control ? "police-control" : "painted-blocks-words"; }

Domain parse_domain_name(const string &name) {
    if (name == "police-control" || name == "police")
        return Domain::police_control;
    if (name == "painted-blocks-words" || name == "painted-blocks" || name == "blocks")
        return Domain::painted_blocks;
    throw invalid_argument("unknown domain: " + name);
}

TaskBundle gen_police_control(const GeneratorConfig &c) {
    const int n = c.grid;
    const int needed = 2 + c.stations + c.booths;
    if (n < 1 || c.stations < 1 || c.booths < 1 || c.obstacles < 0 || c.obstacles >= 1)
        throw invalid_argument("police-control: invalid size parameters");
    if (needed > n * n)
        throw runtime_error("police-control: grid too small for all entities");

    mt19937_64 rng(c.seed);
    auto cell = [](int x, int y) { return "c" + to_string(x) + "-" + to_string(y); };
    const int blocked_count = static_cast<int>(c.obstacles * n * n + 0.5);

    for (int attempt = 0; attempt < c.retries; ++attempt) {
        vector<int> order(n * n);
        for (int i = 0; i < n * n; ++i)
            order[i] = i;
        shuffle(order.begin(), order.end(), rng);
        vector<bool> open(n * n, true);
        for (int i = 0; i < blocked_count; ++i)
            open[order[i]] = false;
        vector<int> free_cells;
        for (int i = 0; i < n * n; ++i)
            if (open[i])
                free_cells.push_back(i);
        if (static_cast<int>(free_cells.size()) < needed)
            continue;

        // Rejection sampling to a connected free region.
        vector<bool> seen(n * n, false);
        deque<int> queue{free_cells.front()};
        seen[free_cells.front()] = true;
        size_t reached = 0;
        const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            ++reached;
            for (int k = 0; k < 4; ++k) {
                int x = u / n + dx[k], y = u % n + dy[k];
                if (x < 0 || y < 0 || x >= n || y >= n || !open[x * n + y] || seen[x * n + y])
                    continue;
                seen[x * n + y] = true;
                queue.push_back(x * n + y);
            }
        }
        if (reached != free_cells.size())
            continue;

        shuffle(free_cells.begin(), free_cells.end(), rng);
        auto name = [&](int i) { return cell(i / n + 1, i % n + 1); };
        const int seeker = free_cells[0], police = free_cells[1];
        vector<string> init;
        for (int i = 0; i < n * n; ++i) {
            if (!open[i])
                continue;
            init.push_back("(free " + name(i) + ")");
            for (int k = 0; k < 4; ++k) {
                int x = i / n + dx[k], y = i % n + dy[k];
                if (x >= 0 && y >= 0 && x < n && y < n && open[x * n + y])
                    init.push_back("(adj " + name(i) + " " + name(x * n + y) + ")");
            }
        }
        init.push_back("(seek-at " + name(seeker) + ")");
        init.push_back("(prev-at " + name(police) + ")");
        init.push_back("(police-station " + name(police) + ")");
        static const char *const kStations[] = {"bus", "train", "plane", "ship", "taxi", "tram", "metro", "ferry"};
        vector<string> stations;
        for (int s = 0; s < c.stations; ++s) {
            stations.push_back(s < 8 ? kStations[s] : "station" + to_string(s));
            init.push_back("(station-at " + stations.back() + " " + name(free_cells[2 + s]) + ")");
        }
        for (int b = 0; b < c.booths; ++b)
            init.push_back("(booth " + name(free_cells[2 + c.stations + b]) + ")");

        string objects;
        for (int i = 0; i < n * n; ++i)
            objects += name(i) + " ";
        objects += "- cell";
        for (const string &s : stations)
            objects += " " + s;
        objects += " - station";

        TaskBundle b;
        b.name = "police-" + to_string(n) + "x" + to_string(n) + "-s" + to_string(c.seed);
        b.domain = kPoliceDomain;
        for (const string &s : stations)
            b.candidates.push_back("(escaped " + s + ")");
        b.truth = pick(rng, b.candidates);
        b.seek_problem = problem_text(b.name, "police-control", "seek", objects, init, b.truth);
        b.prev_problem = problem_text(b.name, "police-control", "prev", objects, init, "");
        if (all_candidates_solvable(b, c.budget))
            return b;
    }
    throw runtime_error("police-control: no acceptable instance within the retry budget");
}

TaskBundle gen_painted_blocks(const GeneratorConfig &c) {
    if (c.blocks < 2 || c.rooms < 1 || c.words < 1 || c.min_word < 2 || c.max_word < c.min_word ||
        c.max_word > c.blocks)
        throw invalid_argument("painted-blocks-words: invalid size parameters");

    mt19937_64 rng(c.seed);
    vector<string> blocks, rooms;
    for (int i = 1; i <= c.blocks; ++i)
        blocks.push_back("b" + to_string(i));
    for (int i = 1; i <= c.rooms; ++i)
        rooms.push_back("r" + to_string(i));

    for (int attempt = 0; attempt < c.retries; ++attempt) {
        vector<string> init{"(handempty)"};

        // Random towers.
        vector<string> order = blocks;
        shuffle(order.begin(), order.end(), rng);
        set<pair<string, string>> on;
        set<string> table;
        for (size_t i = 0; i < order.size();) {
            size_t height = 1 + uniform_int_distribution<size_t>(0, 3)(rng);
            size_t end = min(order.size(), i + height);
            table.insert(order[i]);
            init.push_back("(ontable " + order[i] + ")");
            for (size_t j = i + 1; j < end; ++j) {
                on.insert({order[j], order[j - 1]});
                init.push_back("(on " + order[j] + " " + order[j - 1] + ")");
            }
            init.push_back("(clear " + order[end - 1] + ")");
            i = end;
        }

        // Rooms on a random path plus one shortcut.
        vector<string> path = rooms;
        shuffle(path.begin(), path.end(), rng);
        set<pair<string, string>> links;
        for (size_t i = 0; i + 1 < path.size(); ++i)
            links.insert({path[i], path[i + 1]});
        if (rooms.size() > 2)
            links.insert({pick(rng, rooms), pick(rng, rooms)});
        for (auto [a, b] : links) {
            if (a == b)
                continue;
            init.push_back("(connected " + a + " " + b + ")");
            init.push_back("(connected " + b + " " + a + ")");
        }
        init.push_back("(workshop " + pick(rng, rooms) + ")");
        init.push_back("(paint-in " + pick(rng, rooms) + ")");
        init.push_back("(prev-in " + pick(rng, rooms) + ")");
        sort(init.begin(), init.end());
        init.erase(unique(init.begin(), init.end()), init.end());

        // Words read top to bottom; none may already hold.
        TaskBundle b;
        set<string> distinct;
        for (int w = 0; w < c.words * 20 && static_cast<int>(distinct.size()) < c.words; ++w) {
            int len = uniform_int_distribution<int>(c.min_word, c.max_word)(rng);
            vector<string> word = blocks;
            shuffle(word.begin(), word.end(), rng);
            word.resize(len);
            bool holds = table.count(word.back()) > 0;
            string goal = "(and";
            for (int i = 0; i + 1 < len; ++i) {
                goal += " (on " + word[i] + " " + word[i + 1] + ")";
                holds = holds && on.count({word[i], word[i + 1]});
            }
            goal += " (ontable " + word.back() + "))";
            if (!holds && distinct.insert(goal).second)
                b.candidates.push_back(goal);
        }
        if (static_cast<int>(b.candidates.size()) < c.words)
            continue;

        string objects;
        for (const string &x : blocks)
            objects += x + " ";
        objects += "- block";
        for (const string &r : rooms)
            objects += " " + r;
        objects += " - room";

        b.name = "blocks-" + to_string(c.blocks) + "b" + to_string(c.rooms) + "r-s" + to_string(c.seed);
        b.domain = kBlocksDomain;
        b.truth = pick(rng, b.candidates);
        b.seek_problem = problem_text(b.name, "painted-blocks-words", "seek", objects, init, b.truth);
        b.prev_problem = problem_text(b.name, "painted-blocks-words", "prev", objects, init, "");
        if (all_candidates_solvable(b, c.budget))
            return b;
    }
    throw runtime_error("painted-blocks-words: no acceptable instance within the retry budget");
}

TaskBundle generate(const GeneratorConfig &config) {
    return config.domain == Domain::police_control ? gen_police_control(config) : gen_painted_blocks(config);
}

}  // namespace counterplan

#include "counterplan/task.h"

#include "counterplan/grounding.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace std;
namespace fs = std::filesystem;

namespace counterplan {

namespace {

const Action *find_by_name(const vector<Action> &actions, const string &name) {
    auto it = lower_bound(actions.begin(), actions.end(), name,
                          [](const Action &a, const string &n) { return a.name < n; });
    if (it != actions.end() && it->name == name)
        return &*it;
    return nullptr;
}

string slurp(const fs::path &p) {
    ifstream in(p);
    if (!in)
        throw runtime_error("cannot read " + p.string());
    stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path &p, const string &text) {
    ofstream out(p);
    if (!out)
        throw runtime_error("cannot write " + p.string());
    out << text;
}

string trim(const string &s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Goal canonical(Goal g) {
    sort(g.begin(), g.end());
    g.erase(unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace

const Action *CounterplanningTask::find_seek_action(const string &n) const { return find_by_name(seek_actions, n); }
const Action *CounterplanningTask::find_prev_action(const string &n) const { return find_by_name(prev_actions, n); }

TaskBundle read_bundle(const string &dir) {
    fs::path root(dir);
    TaskBundle b;
    b.name = root.filename().string();
    if (b.name.empty())
        b.name = root.parent_path().filename().string();
    b.domain = slurp(root / "domain.pddl");
    b.seek_problem = slurp(root / "seek.pddl");
    b.prev_problem = slurp(root / "prev.pddl");
    istringstream lines(slurp(root / "candidates.txt"));
    for (string line; getline(lines, line);) {
        line = trim(line);
        if (!line.empty() && line[0] != ';')
            b.candidates.push_back(line);
    }
    if (fs::exists(root / "truth.txt"))
        b.truth = trim(slurp(root / "truth.txt"));
    return b;
}

void write_bundle(const string &dir, const TaskBundle &b) {
    fs::path root(dir);
    fs::create_directories(root);
    spit(root / "domain.pddl", b.domain);
    spit(root / "seek.pddl", b.seek_problem);
    spit(root / "prev.pddl", b.prev_problem);
    string cands;
    for (const string &c : b.candidates)
        cands += c + "\n";
    spit(root / "candidates.txt", cands);
    if (!b.truth.empty())
        spit(root / "truth.txt", b.truth + "\n");
}

CounterplanningTask build_task(const TaskBundle &b) {
    pddl::Domain domain = pddl::parse_domain(b.domain);
    pddl::Problem seek = pddl::parse_problem(b.seek_problem, domain);
    pddl::Problem prev = pddl::parse_problem(b.prev_problem, domain);
    vector<const pddl::Problem *> problems = {&seek, &prev};

    vector<vector<pddl::LiftedLiteral>> extra;
    for (const string &c : b.candidates)
        extra.push_back(parse_lifted_goal(c, domain, problems));
    if (!b.truth.empty())
        extra.push_back(parse_lifted_goal(b.truth, domain, problems));
    if (b.candidates.empty())
        throw runtime_error("bundle " + b.name + " has no candidate goals");

    JointGrounding g = ground_joint(domain, problems, extra);
    CounterplanningTask task;
    task.name = b.name;
    task.facts = g.facts;
    task.init = g.init;
    task.seek_actions = move(g.actions[0]);
    task.prev_actions = move(g.actions[1]);
    for (size_t i = 0; i < b.candidates.size(); ++i)
        task.candidates.push_back(g.extra_goals[i]);
    if (!b.truth.empty()) {
        Goal truth = canonical(g.extra_goals.back());
        for (size_t i = 0; i < task.candidates.size(); ++i)
            if (canonical(task.candidates[i]) == truth)
                task.true_goal = static_cast<int>(i);
        if (!task.true_goal)
            throw runtime_error("bundle " + b.name + ": true goal is not among the candidates");
    }
    return task;
}

}  // namespace counterplan

// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cellcheck/dep_graph.hpp"
#include "cellcheck/feedback.hpp"
#include "cellcheck/fixtures.hpp"
#include "cellcheck/value_match.hpp"
#include "cellcheck/workbook_io.hpp"
#include "properties.hpp"
#include "run.hpp"
#include "semantics_table.hpp"

using namespace cellcheck;
using namespace cellcheck::testing;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances and sizes pinned from the acceptance criteria.
constexpr double kGoldenRuntimeSeconds = 1.0;
constexpr int kRandomCases = 1000;
constexpr std::size_t kMinSemanticsCases = 50;
constexpr double kSuiteBudgetSeconds = 60.0;
constexpr std::size_t kSolutionNodes = 12;
constexpr std::size_t kSolutionEdges = 12;
constexpr std::size_t kSolutionLongestChain = 2;

struct Check {
    std::vector<std::string> failures;
    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string squash(const std::string& s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = !out.empty();
        } else {
            if (space) out += ' ';
            out += c;
            space = false;
        }
    }
    return out;
}

std::string joined(const std::vector<std::string>& msgs) {
    std::string all;
    for (const auto& m : msgs) all += m + " ";
    return squash(all);
}

std::string cells(const std::vector<CellAddress>& v) {
    std::string out;
    for (const auto& c : v) out += (out.empty() ? "" : ",") + c.to_string();
    return out;
}

std::vector<CellAddress> addrs(std::initializer_list<const char*> names) {
    std::vector<CellAddress> out;
    for (const char* n : names) out.push_back(parse_address(n, "Sheet1"));
    return out;
}

const FixtureSet& grades() {
    static const FixtureSet f = load_fixture("grades");
    return f;
}

// 1. Golden messages for the grades fixture.
Check criterion_golden() {
    Check c;
    const std::map<int, std::string> golden = {
        {1, "The spreadsheet is incorrect."},
        {2, "The values of cells D3, C6, D6 are incorrect."},
        {3, "The formulas of cells D3, C6 are incorrect."},
        {4, "The formulas of cells D3, C6 are incorrect. You should recall the info in the 'Calculating the "
            "average' tutorial."},
        {5, "An operator of cell D3 is incorrect. A reference of cell C6 is incorrect."},
        {6, "The operator '+' should be used in cell D3. The references C3:C5 should be used in cell C6."},
        {7, "It is preferable to use an AVG-formula in cells B6, C6, D6."},
    };
    const auto t0 = Clock::now();
    const FixtureSet f = load_fixture("grades");
    for (const auto& [level, want] : golden) {
        const FeedbackReport r = generate_feedback(f.bundle, f.submission, level, level == 7);
        const std::string got = joined(r.messages);
        c.expect(got == squash(want), "L" + std::to_string(level) + ": got \"" + got + "\"");
        c.expect(joined(f.expected_messages.at(level)) == squash(want),
                 "fixture catalog differs at L" + std::to_string(level));
    }
    const MatchResult m = match_values(f.solution, f.submission);
    c.expect(m.value_errors == addrs({"D3", "C6", "D6"}), "value errors " + cells(m.value_errors));
    c.expect(m.formula_errors == addrs({"D3", "C6"}), "formula errors " + cells(m.formula_errors));
    const FeedbackReport r6 = generate_feedback(f.bundle, f.submission, 6);
    c.expect(r6.diagnoses.size() >= 2 && r6.diagnoses[0].detail &&
                 r6.diagnoses[0].detail->category == ErrorCategory::Operator && r6.diagnoses[1].detail &&
                 r6.diagnoses[1].detail->category == ErrorCategory::Reference,
             "L5 categories");
    const double elapsed = seconds_since(t0);
    c.expect(elapsed < kGoldenRuntimeSeconds, "runtime " + std::to_string(elapsed) + " s");
    return c;
}

// 2. Propagation repair.
Check criterion_propagation() {
    Check c;
    const MatchResult m = match_values(grades().solution, grades().submission);
    const CellAddress d6 = parse_address("D6", "Sheet1");
    const CellAddress d3 = parse_address("D3", "Sheet1");
    int d3_fix = -1;
    int d6_first = -1;
    int d6_again = -1;
    for (std::size_t i = 0; i < m.trace.size(); ++i) {
        const TraceEntry& t = m.trace[i];
        if (t.cell == d3 && t.phase == MatchPhase::ReEvaluate && !t.equal) d3_fix = static_cast<int>(i);
        if (t.cell == d6 && t.phase == MatchPhase::FirstCompare) {
            d6_first = static_cast<int>(i);
            c.expect(!t.equal && values_equal(t.submission, Value::number(55)) &&
                         values_equal(t.solution, Value::number((75.0 + 63 + 85) / 3)),
                     "D6 first compare " + to_display(t.submission) + " vs " + to_display(t.solution));
        }
        if (t.cell == d6 && t.phase == MatchPhase::ReEvaluate) {
            d6_again = static_cast<int>(i);
            c.expect(t.equal, "D6 re-evaluation " + to_display(t.submission));
        }
    }
    c.expect(d6_first >= 0 && d6_again >= 0 && d3_fix >= 0 && d3_fix < d6_again, "trace order");
    const std::set<CellAddress> values(m.value_errors.begin(), m.value_errors.end());
    const std::set<CellAddress> formulas(m.formula_errors.begin(), m.formula_errors.end());
    c.expect(values.count(d6) && !formulas.count(d6), "D6 not in value_errors minus formula_errors");
    return c;
}

// 3. Dependency graph of the grades solution.
Check criterion_graph() {
    Check c;
    const Workbook& wb = grades().solution;
    const DependencyGraph g = build_graph(wb, evaluate(wb));
    const Terminals t = terminals(g);
    c.expect(t.outputs == addrs({"B6", "C6", "D6"}), "outputs " + cells(t.outputs));
    c.expect(t.inputs == addrs({"B3", "C3", "B4", "C4", "B5", "C5"}), "inputs " + cells(t.inputs));
    c.expect(g.node_count() == kSolutionNodes, "nodes " + std::to_string(g.node_count()));
    c.expect(g.edge_count() == kSolutionEdges,
             "edges " + std::to_string(g.edge_count()) + " (expected " + std::to_string(kSolutionEdges) + ")");
    c.expect(longest_chain(g) == kSolutionLongestChain, "longest chain " + std::to_string(longest_chain(g)));

    const std::string dot = export_dot(g);
    c.expect(dot == export_dot(build_graph(wb, evaluate(wb))), "DOT not deterministic");
    std::istringstream lines(dot);
    std::string line;
    std::getline(lines, line);
    bool valid = line == "digraph dependencies {";
    std::set<std::string> declared;
    std::size_t edge_lines = 0;
    bool closed = false;
    while (std::getline(lines, line)) {
        if (line == "}") {
            closed = true;
            continue;
        }
        valid = valid && !closed && line.size() > 4 && line.back() == ';' && line.rfind("  \"", 0) == 0;
        const auto arrow = line.find(" -> ");
        if (arrow == std::string::npos) {
            declared.insert(line.substr(2, line.find('"', 3) - 1));
        } else {
            ++edge_lines;
            const std::string from = line.substr(2, arrow - 2);
            const std::string to = line.substr(arrow + 4, line.size() - arrow - 5);
            valid = valid && declared.count(from) && declared.count(to);
        }
    }
    c.expect(valid && closed, "DOT structure");
    c.expect(edge_lines == g.edge_count(), "DOT edge lines");
    c.expect(dot.find("\"D6\" [label=\"D6: 74.33\", color=red];") != std::string::npos, "D6 node label/colour");
    return c;
}

Check from_property(const PropertyOutcome& o, int min_cases) {
    Check c;
    c.expect(o.cases >= min_cases, "only " + std::to_string(o.cases) + " cases");
    for (std::size_t i = 0; i < o.violations.size() && i < 3; ++i) c.failures.push_back(o.violations[i]);
    if (o.violations.size() > 3) c.failures.push_back(std::to_string(o.violations.size()) + " violations in total");
    return c;
}

// 7. Evaluator oracle.
Check criterion_semantics() {
    Check c;
    const auto& cases = semantics_cases();
    c.expect(cases.size() >= kMinSemanticsCases, "only " + std::to_string(cases.size()) + " cases");
    for (const auto& sc : cases) {
        const Value got = evaluate(semantics_workbook(sc.formula)).get(CellAddress{"S", 5, 1});
        c.expect(got == sc.expected, std::string(sc.formula) + " = " + to_display(got) + ", expected " +
                                         to_display(sc.expected));
    }
    const Workbook avg = semantics_workbook("=AVG(92,56,95)");
    c.expect(evaluate(avg).get(CellAddress{"S", 5, 1}) == Value::number(81), "AVG(92,56,95) != 81");
    return c;
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "cellcheck_acceptance";
    fs::create_directories(dir);
    return dir;
}

std::string cli(const std::string& args) { return quoted(CELLCHECK_CLI_PATH) + " " + args; }

// 8. Syntax gate.
Check criterion_syntax_gate() {
    Check c;
    const fs::path task = grades().directory / "task.json";
    const char* broken[] = {"=(B3+C3/2", "=SUMM(B3:B5)", "=B3+", "=B3 C3", "=\"open"};
    for (const char* formula : broken) {
        Workbook sub = grades().submission;
        sub.set_formula(parse_address("D4", "Sheet1"), formula);
        const FeedbackReport r = generate_feedback(grades().bundle, sub, 6);
        c.expect(r.status == Status::SyntaxError, std::string(formula) + ": status " +
                                                      std::string(status_name(r.status)));
        c.expect(r.diagnoses.empty(), std::string(formula) + ": diagnoses not empty");
        const fs::path file = scratch() / "broken.wb";
        std::ofstream(file) << write_workbook(sub);
        const RunResult run = run_command(cli("check " + quoted(task.string()) + " " + quoted(file.string()) +
                                              " --format json 2>/dev/null"));
        c.expect(run.exit_code == 2, std::string(formula) + ": exit " + std::to_string(run.exit_code));
        const auto j = nlohmann::json::parse(run.out, nullptr, false);
        c.expect(!j.is_discarded() && j["status"] == "syntax_error" && j["diagnoses"].empty(),
                 std::string(formula) + ": CLI report");
    }
    return c;
}

// 9. Interface stability.
Check criterion_interfaces() {
    Check c;
    const FixtureSet& f = grades();
    c.expect(read_workbook(write_workbook(f.submission)) == f.submission, "submission round trip");
    c.expect(read_workbook(write_workbook(f.solution)) == f.solution, "solution round trip");
    c.expect(bundle_from_json(parse_json_strict(bundle_to_json(f.bundle).dump()), f.directory) == f.bundle,
             "bundle round trip");

    const fs::path task = f.directory / "task.json";
    std::vector<std::string> files;
    int n = 0;
    for (const char* wb : {"table1.wb", "table2.wb"}) {
        for (int level = 1; level <= 7; ++level) {
            const std::string cmd = cli("check " + quoted(task.string()) + " " +
                                        quoted((f.directory / wb).string()) + " --format json --level " +
                                        std::to_string(level) + (level == 7 ? " --force-quality" : ""));
            const RunResult a = run_command(cmd);
            const RunResult b = run_command(cmd);
            c.expect(a.out == b.out && a.exit_code == b.exit_code, std::string(wb) + " L" + std::to_string(level) +
                                                                       ": output differs between runs");
            const fs::path out = scratch() / ("report" + std::to_string(n++) + ".json");
            std::ofstream(out) << a.out;
            files.push_back(quoted(out.string()));
        }
    }
    std::string cmd = quoted(CELLCHECK_PYTHON) + " " + quoted(CELLCHECK_SCHEMA_CHECKER) + " " +
                      quoted(CELLCHECK_SCHEMA_PATH);
    for (const auto& p : files) cmd += " " + p;
    const RunResult v = run_command(cmd + " 2>&1");
    c.expect(v.exit_code == 0, "schema validation: " + v.out);
    return c;
}

}  // namespace

int main() {
    const auto suite_start = Clock::now();
    struct Criterion {
        int id;
        const char* title;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "grades golden messages, levels 1-7", criterion_golden},
        {2, "propagation repair of D6", criterion_propagation},
        {3, "grades solution dependency graph", criterion_graph},
        {4, "error injection on 1000 random workbooks",
         [] { return from_property(check_error_injection(kRandomCases, 4001), kRandomCases); }},
        {5, "self-match idempotence on 1000 random workbooks",
         [] { return from_property(check_self_match(kRandomCases, 5001), kRandomCases); }},
        {6, "canonicalization soundness on 1000 random workbooks",
         [] { return from_property(check_canonicalization(kRandomCases, 6001), kRandomCases); }},
        {7, "function semantics table", criterion_semantics},
        {8, "syntax gate", criterion_syntax_gate},
        {9, "interface stability", criterion_interfaces},
    };

    int failed = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto t0 = Clock::now();
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = seconds_since(t0);
        std::printf("%s criterion %d: %s (%.2f s)\n", c.failures.empty() ? "PASS" : "FAIL", cr.id, cr.title, secs);
        for (const auto& f : c.failures) std::printf("    %s\n", f.c_str());
        failed += c.failures.empty() ? 0 : 1;
    }

    // 10. Whole suite budget: the unit test binary plus this acceptance run.
    const RunResult unit = run_command(quoted(CELLCHECK_UNIT_TESTS) + " --gtest_brief=1 >/dev/null 2>&1; echo $?");
    const double total = seconds_since(suite_start);
    const bool ok10 = unit.out == "0\n" && total < kSuiteBudgetSeconds;
    std::printf("%s criterion 10: whole suite under %.0f s (%.2f s, unit tests %s)\n", ok10 ? "PASS" : "FAIL",
                kSuiteBudgetSeconds, total, unit.out == "0\n" ? "green" : "red");
    failed += ok10 ? 0 : 1;

    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}

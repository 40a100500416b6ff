#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cellcheck/dep_graph.hpp"
#include "cellcheck/errors.hpp"
#include "cellcheck/eval.hpp"
#include "cellcheck/feedback.hpp"
#include "cellcheck/parser.hpp"
#include "cellcheck/quality.hpp"
#include "cellcheck/workbook_io.hpp"

namespace fs = std::filesystem;
using namespace cellcheck;

namespace {

enum Exit : int { kPass = 0, kFail = 1, kSyntax = 2, kUsage = 3 };

struct Options {
    std::string task;
    std::string submission;
    std::string directory;
    std::string workbook;
    int level = 1;
    std::string format = "text";
    bool force_quality = false;
    std::optional<double> abs_tol;
    std::optional<double> rel_tol;
    std::string out;
};

int exit_for(Status s) {
    switch (s) {
        case Status::Pass: return kPass;
        case Status::Fail: return kFail;
        case Status::SyntaxError: return kSyntax;
    }
    return kFail;
}

TaskBundle load_task(const Options& opt) {
    TaskBundle bundle = load_bundle(opt.task);
    if (opt.abs_tol) bundle.tolerance.abs = *opt.abs_tol;
    if (opt.rel_tol) bundle.tolerance.rel = *opt.rel_tol;
    validate_bundle(bundle);
    return bundle;
}

void write_output(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + opt.out + "'");
    f << text;
}

int cmd_check(const Options& opt) {
    const TaskBundle bundle = load_task(opt);
    const Workbook submission = load_workbook(opt.submission);
    const FeedbackReport report = generate_feedback(bundle, submission, opt.level, opt.force_quality);
    write_output(opt, (opt.format == "json" ? render_json(report) : render_text(report)) + "\n");
    return exit_for(report.status);
}

struct BatchRow {
    std::string csv;
    std::string jsonl;
};

BatchRow grade_one(const TaskBundle& bundle, const fs::path& file, const Options& opt) {
    const std::string name = file.stem().string();
    nlohmann::ordered_json line;
    line["file"] = file.filename().string();
    try {
        const Workbook submission = load_workbook(file);
        const FeedbackReport report = generate_feedback(bundle, submission, opt.level, opt.force_quality);
        std::size_t formula_errors = 0;
        for (const auto& d : report.diagnoses) formula_errors += d.kind == DiagnosisKind::FormulaError ? 1 : 0;
        line["report"] = report_to_json(report);
        return {name + "," + std::string(status_name(report.status)) + "," + std::to_string(report.diagnoses.size()) +
                    "," + std::to_string(formula_errors),
                line.dump()};
    } catch (const std::exception& e) {
        line["error"] = e.what();
        return {name + ",error,,", line.dump()};
    }
}

int cmd_batch(const Options& opt) {
    const TaskBundle bundle = load_task(opt);
    if (!fs::is_directory(opt.directory)) throw std::runtime_error("not a directory: '" + opt.directory + "'");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opt.directory)) {
        if (entry.is_regular_file() && entry.path().extension() == ".wb") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<std::future<BatchRow>> jobs;
    jobs.reserve(files.size());
    for (const auto& f : files) {
        jobs.push_back(std::async(std::launch::async, grade_one, std::cref(bundle), f, std::cref(opt)));
    }
    std::string csv;
    std::string jsonl;
    if (!files.empty()) csv = "file,status,value_errors,formula_errors\n";
    for (auto& j : jobs) {
        const BatchRow row = j.get();
        csv += row.csv + "\n";
        jsonl += row.jsonl + "\n";
    }
    std::cout << csv;
    if (!opt.out.empty()) {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + opt.out + "'");
        f << jsonl;
    }
    return kPass;
}

int cmd_validate(const Options& opt) {
    const Workbook wb = load_workbook(opt.workbook);
    const SyntaxReport report = syntax_check(wb);
    const std::string sheet = wb.default_sheet();
    if (opt.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& e : report.errors) {
            arr.push_back({{"cell", e.cell.display(sheet)}, {"message", e.message}, {"position", e.position}});
        }
        write_output(opt, arr.dump() + "\n");
    } else {
        std::string text = report.ok() ? "OK\n" : "";
        for (const auto& e : report.errors) {
            text += e.cell.display(sheet) + ":" + std::to_string(e.position) + ": " + e.message + "\n";
        }
        write_output(opt, text);
    }
    return report.ok() ? kPass : kSyntax;
}

int cmd_metrics(const Options& opt) {
    const Workbook wb = load_workbook(opt.workbook);
    const SyntaxReport syntax = syntax_check(wb);
    if (!syntax.ok()) {
        std::cerr << "cellcheck: workbook has syntax errors; run 'cellcheck validate' for details\n";
        return kSyntax;
    }
    const ValueGrid grid = evaluate(wb);
    const QualityMetrics m = compute_metrics(wb, build_graph(wb, grid), grid);
    write_output(opt, metrics_to_json(m, wb.default_sheet()).dump(2) + "\n");
    return kPass;
}

int cmd_graph(const Options& opt) {
    const Workbook wb = load_workbook(opt.workbook);
    const SyntaxReport syntax = syntax_check(wb);
    if (!syntax.ok()) {
        std::cerr << "cellcheck: workbook has syntax errors; run 'cellcheck validate' for details\n";
        return kSyntax;
    }
    const ValueGrid grid = evaluate(wb);
    write_output(opt, export_dot(build_graph(wb, grid)));
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grade spreadsheet submissions against a reference solution."};
    app.require_subcommand(1);
    Options opt;

    auto add_tolerance = [&](CLI::App* cmd) {
        cmd->add_option("--abs-tol", opt.abs_tol, "Absolute tolerance for numeric comparison")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--rel-tol", opt.rel_tol, "Relative tolerance for numeric comparison")
            ->check(CLI::NonNegativeNumber);
    };
    auto add_level = [&](CLI::App* cmd) {
        cmd->add_option("--level", opt.level, "Feedback level 1-7")->check(CLI::Range(1, 7));
        cmd->add_flag("--force-quality", opt.force_quality, "Show level-7 findings even when the submission fails");
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };

    auto* check = app.add_subcommand("check", "Grade one submission");
    check->add_option("task", opt.task, "Task bundle file")->required();
    check->add_option("submission", opt.submission, "Submission workbook")->required();
    add_level(check);
    add_format(check);
    add_tolerance(check);
    check->add_option("--out", opt.out, "Write the report to a file instead of stdout");

    auto* batch = app.add_subcommand("batch", "Grade every .wb file in a directory");
    batch->add_option("task", opt.task, "Task bundle file")->required();
    batch->add_option("directory", opt.directory, "Directory of submissions")->required();
    add_level(batch);
    add_tolerance(batch);
    batch->add_option("--out", opt.out, "JSON-lines file receiving one report per submission");

    auto* validate = app.add_subcommand("validate", "Syntax-check every formula of a workbook");
    validate->add_option("workbook", opt.workbook, "Workbook file")->required();
    add_format(validate);
    validate->add_option("--out", opt.out, "Output file");

    auto* metrics = app.add_subcommand("metrics", "Print quality metrics as JSON");
    metrics->add_option("workbook", opt.workbook, "Workbook file")->required();
    metrics->add_option("--out", opt.out, "Output file");

    auto* graph = app.add_subcommand("graph", "Print the dependency graph in DOT format");
    graph->add_option("workbook", opt.workbook, "Workbook file")->required();
    graph->add_option("--out", opt.out, "Output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (check->parsed()) return cmd_check(opt);
        if (batch->parsed()) return cmd_batch(opt);
        if (validate->parsed()) return cmd_validate(opt);
        if (metrics->parsed()) return cmd_metrics(opt);
        if (graph->parsed()) return cmd_graph(opt);
    } catch (const std::exception& e) {
        std::cerr << "cellcheck: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

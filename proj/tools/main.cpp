#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "isofib/analyze.hpp"
#include "isofib/errors.hpp"
#include "isofib/hirzebruch_jung.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitInternalError = 2;
constexpr int kExitGateViolation = 3;

std::string pick_format(const isofib::AnalysisConfig& cfg, bool json_flag, bool text_flag,
                        bool csv_flag) {
    if (json_flag) return "json";
    if (csv_flag) return "csv";
    if (text_flag) return "text";
    return cfg.format;
}

int do_analyze(const std::string& config_path, bool json_flag, bool text_flag, bool csv_flag) {
    auto cfg = isofib::load_config_file(config_path);
    auto report = isofib::run_analyze(cfg);
    std::string fmt = pick_format(cfg, json_flag, text_flag, csv_flag);
    if (fmt == "json")
        std::cout << isofib::report_to_json(report) << "\n";
    else if (fmt == "csv")
        std::cout << isofib::csv_header() << "\n" << isofib::csv_row(report) << "\n";
    else
        std::cout << isofib::report_to_text(report);
    bool violation = (report.verdict.applicable &&
                      (!report.verdict.main1_ok || !report.verdict.serrano_tan_ok)) ||
                     (report.verdict.main2_checked && !report.verdict.main2_ok);
    return violation ? kExitGateViolation : kExitOk;
}

int do_search(const std::string& config_path, int jobs, bool json_flag, bool text_flag,
              bool csv_flag) {
    auto cfg = isofib::load_config_file(config_path);
    if (jobs > 0) cfg.jobs = jobs;
    auto outcome = isofib::run_search(cfg);
    std::string fmt = pick_format(cfg, json_flag, text_flag, csv_flag);
    if (fmt == "json")
        std::cout << isofib::search_to_json(outcome) << "\n";
    else if (fmt == "csv")
        std::cout << isofib::search_to_csv(outcome);
    else
        std::cout << isofib::search_to_text(outcome);
    return outcome.any_gate_violation ? kExitGateViolation : kExitOk;
}

int do_hj(long n, long q) {
    auto x = isofib::hj_expand(n, q);
    auto d = isofib::hj_dual(n, q);
    auto corr = isofib::hj_corrections(x);
    std::cout << n << "/" << q << " = [";
    for (size_t i = 0; i < x.b.size(); ++i) std::cout << (i ? "," : "") << x.b[i];
    std::cout << "]\n";
    std::cout << "dual " << n << "/" << (n - q) << " = [";
    for (size_t i = 0; i < d.b.size(); ++i) std::cout << (i ? "," : "") << d.b[i];
    std::cout << "]\n";
    std::cout << "discrepancies:";
    for (const auto& a : corr.discrepancies) std::cout << " " << a.str();
    std::cout << "\n";
    std::cout << "c = " << corr.c.str() << "\n";
    std::cout << "e = " << corr.e.str() << "\n";
    std::cout << "B = " << corr.B.str() << "\n";
    std::cout << "rdp: " << (isofib::is_rdp(x) ? "yes" : "no") << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "isofib: standard isotrivial fibrations (C1 x C2)/G from finite group data --\n"
        "singular loci, Hirzebruch-Jung resolutions, numerical invariants, singular\n"
        "fibres, and the inequalities K^2 <= 8chi - 2 and K^2 <= 8chi - 5.\n"
        "Exit codes: 0 ok, 1 invalid input, 2 internal invariant violation,\n"
        "3 theorem inequality violated on an applicable surface."};
    app.require_subcommand(1);

    std::string config_path;
    bool json_flag = false, text_flag = false, csv_flag = false;
    int jobs = 0;

    auto* analyze = app.add_subcommand("analyze", "analyze one surface from a config file");
    analyze->add_option("--config", config_path, "config file")->required();
    analyze->add_flag("--json", json_flag, "emit the JSON report");
    analyze->add_flag("--text", text_flag, "emit the human-readable report (default)");
    analyze->add_flag("--csv", csv_flag, "emit a CSV row");

    auto* search = app.add_subcommand("search", "enumerate and analyze surfaces from a catalog");
    search->add_option("--config", config_path, "config file")->required();
    search->add_option("--jobs", jobs, "worker count (default: ISOFIB_JOBS or hardware)");
    search->add_flag("--json", json_flag, "emit the JSON report list");
    search->add_flag("--text", text_flag, "emit the summary table (default)");
    search->add_flag("--csv", csv_flag, "emit the CSV summary");

    long hj_n = 0, hj_q = 0;
    auto* hj = app.add_subcommand("hj", "Hirzebruch-Jung data of the singularity 1/N(1,Q)");
    hj->add_option("N", hj_n, "order of the cyclic group")->required();
    hj->add_option("Q", hj_q, "rotation weight, 0 < Q < N, coprime to N")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analyze))
            return do_analyze(config_path, json_flag, text_flag, csv_flag);
        if (app.got_subcommand(search))
            return do_search(config_path, jobs, json_flag, text_flag, csv_flag);
        if (app.got_subcommand(hj)) return do_hj(hj_n, hj_q);
    } catch (const isofib::internal_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternalError;
    } catch (const isofib::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const isofib::budget_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
    return kExitOk;
}

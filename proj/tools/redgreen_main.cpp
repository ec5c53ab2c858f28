// Command surface for the red/green Bell experiment workbench.
//
//   redgreen simulate  --model spec.json --trials N --seed S [--out report.json]
//                      [--records runs.txt] [--shards K] [--ambient-mode ...]
//   redgreen verify    --model spec.json [--out report.json]
//   redgreen enumerate [--out report.json]
//   redgreen analyze   --records runs.txt [--out report.json]
//
// Exit codes: 0 ok, 2 validation failure, 3 compliance violation, 4 I/O.

#include <CLI11.hpp>

#include "redgreen/cli.hpp"
#include "redgreen/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"simulation and exact verification for the two-detector, three-setting, "
                 "red/green-light correlation experiment"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(redgreen::kToolVersion));

    redgreen::SimulateOptions sim;
    std::string ambient_mode = "per-run";
    auto* simulate = app.add_subcommand("simulate", "run a model and report its statistics");
    simulate->add_option("--model", sim.model_path, "model document (JSON)")->required();
    simulate->add_option("--trials", sim.trials, "number of runs");
    simulate->add_option("--seed", sim.seed, "root seed");
    simulate->add_option("--shards", sim.shards, "parallel shards (records are identical)");
    simulate->add_option("--ambient-mode", ambient_mode, "per-run or source-visible")
        ->check(CLI::IsMember({"per-run", "source-visible"}));
    std::string sim_out, sim_records;
    simulate->add_option("--out", sim_out, "report path (stdout when omitted)");
    simulate->add_option("--records", sim_records, "also write raw records here");

    redgreen::VerifyOptions ver;
    auto* verify = app.add_subcommand("verify", "exact analysis of a local strategy document");
    verify->add_option("--model", ver.model_path, "model document (JSON)")->required();
    std::string ver_out;
    verify->add_option("--out", ver_out, "report path (stdout when omitted)");

    redgreen::EnumerateOptions enu;
    auto* enumerate =
        app.add_subcommand("enumerate", "instruction-set table, mixture bound, contradiction");
    std::string enu_out;
    enumerate->add_option("--out", enu_out, "report path (stdout when omitted)");

    redgreen::AnalyzeOptions ana;
    auto* analyze = app.add_subcommand("analyze", "re-tally a saved records file");
    analyze->add_option("--records", ana.records_path, "records file")->required();
    std::string ana_out;
    analyze->add_option("--out", ana_out, "report path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return redgreen::kExitValidation;
    }

    if (simulate->parsed()) {
        if (!sim_out.empty()) sim.out_path = sim_out;
        if (!sim_records.empty()) sim.records_path = sim_records;
        sim.ambient_mode = ambient_mode == "per-run" ? redgreen::AmbientMode::PerRun
                                                     : redgreen::AmbientMode::SourceVisible;
        return redgreen::cmd_simulate(sim);
    }
    if (verify->parsed()) {
        if (!ver_out.empty()) ver.out_path = ver_out;
        return redgreen::cmd_verify(ver);
    }
    if (enumerate->parsed()) {
        if (!enu_out.empty()) enu.out_path = enu_out;
        return redgreen::cmd_enumerate(enu);
    }
    if (!ana_out.empty()) ana.out_path = ana_out;
    return redgreen::cmd_analyze(ana);
}

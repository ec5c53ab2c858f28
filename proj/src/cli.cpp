#include "redgreen/cli.hpp"

#include <functional>
#include <iostream>

#include "redgreen/model_spec.hpp"
#include "redgreen/records.hpp"
#include "redgreen/report.hpp"
#include "redgreen/verifier.hpp"

namespace redgreen {

namespace {

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const EmptyDataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

void emit(const ReportJson& report, const std::optional<std::string>& out_path) {
    if (out_path) {
        write_json_file(*out_path, report);
    } else {
        std::cout << dump_report(report);
    }
}

const char* ambient_mode_name(AmbientMode mode) {
    return mode == AmbientMode::PerRun ? "per-run" : "source-visible";
}

ReportJson report_header(const std::string& command) {
    ReportJson j;
    j["tool"] = tool_json();
    j["command"] = command;
    return j;
}

}  // namespace

int cmd_simulate(const SimulateOptions& opt) {
    return guarded([&] {
        const ModelSpec spec = load_model_spec(opt.model_path);
        if (opt.trials < 1) throw ValidationError("--trials must be >= 1");

        ExperimentConfig cfg;
        cfg.trials = opt.trials;
        cfg.seed = opt.seed;
        cfg.shards = opt.shards;
        cfg.ambient_mode = opt.ambient_mode;

        std::vector<RunRecord> records;
        std::optional<Rational> min_per_run_fraction;
        if (spec.is_local()) {
            records = run_experiment(*build_local_model(spec), cfg);
        } else if (spec.is_joint()) {
            records = run_reference_experiment(*build_joint_model(spec), cfg);
        } else {
            if (opt.shards != 1) {
                throw ValidationError("adaptive models run strictly sequentially; --shards must be 1");
            }
            AdaptiveRunResult result =
                run_adaptive_experiment(*build_adaptive_strategy(spec), cfg.trials, cfg.seed);
            records = std::move(result.records);
            for (const MixtureWeights& w : result.per_run_mixtures) {
                const Rational f = mixture_same_fraction(w);
                if (!min_per_run_fraction || f < *min_per_run_fraction) min_per_run_fraction = f;
            }
        }

        // The shard count is an execution detail with no effect on the
        // records, so it is not echoed: reports must be byte-identical
        // across shard counts.
        ReportJson report = report_header("simulate");
        ReportJson config;
        config["model"] = serialize_model_spec(spec);
        config["trials"] = cfg.trials;
        config["seed"] = cfg.seed;
        config["ambient_mode"] = ambient_mode_name(cfg.ambient_mode);
        report["config"] = config;
        report["statistics"] = statistics_json(tally(records));
        if (min_per_run_fraction) {
            report["adaptive"] =
                ReportJson{{"min_per_run_same_fraction", format_rational(*min_per_run_fraction)}};
        }

        if (opt.records_path) write_records(*opt.records_path, records);
        emit(report, opt.out_path);
        return kExitOk;
    });
}

int cmd_verify(const VerifyOptions& opt) {
    return guarded([&] {
        const ModelSpec spec = load_model_spec(opt.model_path);
        ReportJson report = report_header("verify");
        report["config"] = ReportJson{{"model", serialize_model_spec(spec)}};
        ReportJson v;
        int exit_code = kExitOk;

        switch (spec.kind) {
            case ModelKind::InstructionSet: {
                const InstructionSet& set = *spec.set;
                v["exact_same_fraction"] = format_rational(instruction_set_same_fraction(set));
                v["feature_i"] = "1/1";
                v["pure"] = set.is_pure();
                break;
            }
            case ModelKind::InstructionMixture: {
                v["exact_same_fraction"] = format_rational(mixture_same_fraction(*spec.mixture));
                v["feature_i"] = "1/1";
                break;
            }
            case ModelKind::Microsetting: {
                const MicrosettingModel& m = *spec.microsetting;
                const CollapseReport collapse = collapse_analysis(m);
                v["collapse"] = collapse_json(collapse);
                if (collapse.compliant) {
                    v["exact_same_fraction"] = format_rational(exact_same_fraction(m));
                    v["feature_i"] = "1/1";
                } else {
                    v["exact_same_fraction"] = nullptr;  // undefined for non-compliant models
                    exit_code = kExitViolation;
                }
                break;
            }
            default:
                throw ValidationError(
                    "verify requires an exactly analyzable kind: instruction-set, "
                    "instruction-mixture, or microsetting (got '" +
                    kind_name(spec.kind) + "')");
        }

        report["verifier"] = v;
        emit(report, opt.out_path);
        return exit_code;
    });
}

int cmd_enumerate(const EnumerateOptions& opt) {
    return guarded([&] {
        ReportJson report = report_header("enumerate");
        const IncompatibilityCertificate cert = incompatibility_certificate();
        report["rows"] = enumeration_rows_json(cert.rows);
        report["mixture_bound"] = mixture_bound_json(min_same_fraction_over_mixtures());
        report["incompatibility"] = incompatibility_json(cert);
        emit(report, opt.out_path);
        return kExitOk;
    });
}

int cmd_analyze(const AnalyzeOptions& opt) {
    return guarded([&] {
        const std::vector<RunRecord> records = read_records(opt.records_path);
        if (records.empty()) {
            throw EmptyDataError("records file has no records: " + opt.records_path);
        }
        ReportJson report = report_header("analyze");
        report["config"] = ReportJson{{"records_file", opt.records_path}};
        report["statistics"] = statistics_json(tally(records));
        emit(report, opt.out_path);
        return kExitOk;
    });
}

}  // namespace redgreen

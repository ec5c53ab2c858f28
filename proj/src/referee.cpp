#include "redgreen/referee.hpp"

#include <future>
#include <string>

namespace redgreen {

namespace {

Setting draw_setting(std::uint64_t seed, std::uint64_t trial, Role role) {
    RandomStream stream(seed, trial, role);
    return static_cast<Setting>(1 + stream.uniform_below(3));
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
    if (cfg.shards < 1) throw ValidationError("shards must be >= 1");
}

RunRecord run_local_trial(const LocalModel& model, const ExperimentConfig& cfg,
                          std::uint64_t trial) {
    RandomStream source(cfg.seed, trial, Role::Source);
    RandomStream ambient_stream(cfg.seed, trial, Role::Ambient);

    HiddenState state;
    TauIndex tau;
    if (cfg.ambient_mode == AmbientMode::SourceVisible) {
        tau = model.ambient().sample(ambient_stream);
        state = model.prepare({trial, tau}, source);
    } else {
        state = model.prepare({trial, std::nullopt}, source);
        tau = model.ambient().sample(ambient_stream);
    }

    const SettingPair pair = draw_setting_pair(cfg.seed, trial);
    const AmbientCondition condition = model.ambient().condition(tau);

    RandomStream local_a(cfg.seed, trial, Role::WingA);
    RandomStream local_b(cfg.seed, trial, Role::WingB);
    const Color ca = model.respond(Wing::A, pair.a, state, condition, local_a);
    const Color cb = model.respond(Wing::B, pair.b, state, condition, local_b);
    return {trial, pair, {ca, cb}};
}

template <typename TrialFn>
std::vector<RunRecord> run_sharded(const ExperimentConfig& cfg, const TrialFn& run_trial) {
    std::vector<RunRecord> records;
    records.reserve(cfg.trials);
    if (cfg.shards == 1) {
        for (std::uint64_t t = 0; t < cfg.trials; ++t) records.push_back(run_trial(t));
        return records;
    }
    // Records are a pure function of (seed, trial), so the shard count never
    // shows in the output; cap the worker count at something sane.
    const std::uint64_t shards = std::min<std::uint64_t>({cfg.shards, cfg.trials, 64});
    std::vector<std::future<std::vector<RunRecord>>> futures;
    for (std::uint64_t s = 0; s < shards; ++s) {
        const std::uint64_t lo = cfg.trials * s / shards;
        const std::uint64_t hi = cfg.trials * (s + 1) / shards;
        futures.push_back(std::async(std::launch::async, [lo, hi, &run_trial] {
            std::vector<RunRecord> part;
            part.reserve(hi - lo);
            for (std::uint64_t t = lo; t < hi; ++t) part.push_back(run_trial(t));
            return part;
        }));
    }
    for (auto& f : futures) {
        auto part = f.get();
        records.insert(records.end(), part.begin(), part.end());
    }
    return records;
}

}  // namespace

SettingPair draw_setting_pair(std::uint64_t seed, std::uint64_t trial) {
    return {draw_setting(seed, trial, Role::SettingsA), draw_setting(seed, trial, Role::SettingsB)};
}

std::vector<RunRecord> run_experiment(const LocalModel& model, const ExperimentConfig& cfg) {
    validate_config(cfg);
    return run_sharded(cfg, [&](std::uint64_t t) {
        try {
            return run_local_trial(model, cfg, t);
        } catch (const ValidationError& e) {
            throw ValidationError("trial " + std::to_string(t) + ": " + e.what());
        }
    });
}

std::vector<RunRecord> run_reference_experiment(const JointModel& model,
                                                const ExperimentConfig& cfg) {
    validate_config(cfg);
    return run_sharded(cfg, [&](std::uint64_t t) {
        const SettingPair pair = draw_setting_pair(cfg.seed, t);
        RandomStream source(cfg.seed, t, Role::Source);
        return RunRecord{t, pair, model.respond_joint(pair, source)};
    });
}

AdaptiveRunResult run_adaptive_experiment(const AdaptiveStrategy& strategy, std::uint64_t trials,
                                          std::uint64_t seed) {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    AdaptiveRunResult result;
    result.records.reserve(trials);
    result.per_run_mixtures.reserve(trials);
    for (std::uint64_t t = 0; t < trials; ++t) {
        MixtureWeights weights = strategy.next(result.records);
        try {
            validate_mixture(weights);
        } catch (const ValidationError& e) {
            throw ValidationError("adaptive strategy, run " + std::to_string(t) + ": " + e.what());
        }
        RandomStream source(seed, t, Role::Source);
        const RationalSampler sampler{std::span<const Rational>(weights)};
        const InstructionSet set = InstructionSet::from_index(static_cast<int>(sampler.sample(source)));
        const SettingPair pair = draw_setting_pair(seed, t);
        result.records.push_back({t, pair, {set.at(pair.a), set.at(pair.b)}});
        result.per_run_mixtures.push_back(std::move(weights));
    }
    return result;
}

LocalityVerdict locality_replay_check(const PrepareFn& prepare, const AmbientDistribution& ambient,
                                      const WingProbe& probe, std::uint64_t seed,
                                      std::uint64_t probes) {
    for (std::uint64_t p = 0; p < probes; ++p) {
        RandomStream source(seed, p, Role::Source);
        const HiddenState state = prepare({p, std::nullopt}, source);
        RandomStream ambient_stream(seed, p, Role::Ambient);
        const TauIndex tau = ambient.sample(ambient_stream);
        const AmbientCondition condition = ambient.condition(tau);
        for (const Wing wing : {Wing::A, Wing::B}) {
            const Role role = wing == Wing::A ? Role::WingA : Role::WingB;
            for (const Setting near : all_settings()) {
                std::optional<Color> first_color;
                Setting first_far = Setting::One;
                for (const Setting far : all_settings()) {
                    // Fresh stream with the same key: the wing-local draws
                    // replay identically, so only the far setting varies.
                    RandomStream local(seed, p, role);
                    const Color c = probe(wing, near, far, state, condition, local);
                    if (!first_color) {
                        first_color = c;
                        first_far = far;
                    } else if (*first_color != c) {
                        return {false,
                                LocalityWitness{p, wing, near, first_far, far, *first_color, c, tau}};
                    }
                }
            }
        }
    }
    return {true, std::nullopt};
}

LocalityVerdict locality_replay_check(const LocalModel& model, std::uint64_t seed,
                                      std::uint64_t probes) {
    const WingProbe probe = [&model](Wing wing, Setting near, Setting /*far*/,
                                     const HiddenState& state, const AmbientCondition& ambient,
                                     RandomStream& local) {
        return model.respond(wing, near, state, ambient, local);
    };
    const PrepareFn prepare = [&model](const PrepareContext& ctx, RandomStream& source) {
        return model.prepare(ctx, source);
    };
    return locality_replay_check(prepare, model.ambient(), probe, seed, probes);
}

LocalityVerdict locality_replay_check(const NonlocalControl& control, std::uint64_t seed,
                                      std::uint64_t probes) {
    static const AmbientDistribution trivial_ambient;
    const WingProbe probe = [&control](Wing wing, Setting near, Setting far,
                                       const HiddenState& state, const AmbientCondition&,
                                       RandomStream&) {
        return control.probe(wing, near, far, state);
    };
    const PrepareFn prepare = [&control](const PrepareContext& ctx, RandomStream& source) {
        return control.prepare_shared(ctx, source);
    };
    return locality_replay_check(prepare, trivial_ambient, probe, seed, probes);
}

}  // namespace redgreen

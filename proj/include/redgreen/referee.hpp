#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "redgreen/core.hpp"
#include "redgreen/models.hpp"
#include "redgreen/rng.hpp"

namespace redgreen {

// When the shared ambient condition becomes known to the source. PerRun is
// the default: the state is prepared first, then tau is drawn. SourceVisible
// draws tau first and hands it to prepare — the variant in which the common
// conditions (say, synchronized clock time) are readable at the source, so
// instruction sets can assume their final form before departure. Both modes
// draw tau from the same substream, so the tau sequence is identical.
enum class AmbientMode { PerRun, SourceVisible };

struct ExperimentConfig {
    std::uint64_t trials = 1;   // >= 1
    std::uint64_t seed = 0;
    AmbientMode ambient_mode = AmbientMode::PerRun;
    std::uint32_t shards = 1;   // >= 1; sharding never changes the records
};

// The settings for trial t are a pure function of (seed, t): independent
// uniform draws over {1,2,3} per wing from the per-wing settings substreams.
// Nothing the model does can shift them.
SettingPair draw_setting_pair(std::uint64_t seed, std::uint64_t trial);

// Runs the protocol trial by trial: prepare hidden state (source substream),
// draw the shared tau (ambient substream), draw both settings independently
// (per-wing settings substreams), query each wing with wing-local arguments
// only, record. Output has one record per trial, in trial order, bit-stable
// for a given seed and identical for every shard count.
std::vector<RunRecord> run_experiment(const LocalModel& model, const ExperimentConfig& cfg);

// Reference-data generator for joint models (quantum reference, nonlocal
// control). Settings are drawn exactly as above; the outcome comes from one
// joint draw on the source substream.
std::vector<RunRecord> run_reference_experiment(const JointModel& model,
                                                const ExperimentConfig& cfg);

struct AdaptiveRunResult {
    std::vector<RunRecord> records;
    // The exact instruction-set distribution the strategy returned before
    // each run; per-run bound checks evaluate these.
    std::vector<MixtureWeights> per_run_mixtures;
};

// Strictly sequential: the strategy sees all completed runs, one set is
// drawn from its distribution (source substream) before settings are drawn.
// Throws ValidationError if a returned distribution is not a distribution.
AdaptiveRunResult run_adaptive_experiment(const AdaptiveStrategy& strategy, std::uint64_t trials,
                                          std::uint64_t seed);

// ------------------------------------------------------- locality check ----

struct LocalityWitness {
    std::uint64_t probe;
    Wing wing;
    Setting near_setting;
    Setting far_first;
    Setting far_second;
    Color color_first;
    Color color_second;
    TauIndex tau;
};

struct LocalityVerdict {
    bool passed;
    std::optional<LocalityWitness> witness;
};

// Probe surface for the replay check: unlike LocalModel::respond it admits
// the far wing's setting, so nonlocal shims can be put on the bench.
using WingProbe = std::function<Color(Wing wing, Setting near, Setting far,
                                      const HiddenState& state, const AmbientCondition& ambient,
                                      RandomStream& local)>;
using PrepareFn = std::function<HiddenState(const PrepareContext&, RandomStream& source)>;

// For `probes` random (state, tau) contexts, re-invokes each wing's response
// with everything held fixed — same state, same tau, same wing-local
// randomness — while only the far wing's setting varies. Passes iff no color
// ever changes; the first change is returned as a concrete witness.
LocalityVerdict locality_replay_check(const PrepareFn& prepare, const AmbientDistribution& ambient,
                                      const WingProbe& probe, std::uint64_t seed,
                                      std::uint64_t probes);

// Adapter for genuine local models: the probe forwards to respond, which
// cannot see the far setting, so the check passes by the signature itself.
LocalityVerdict locality_replay_check(const LocalModel& model, std::uint64_t seed,
                                      std::uint64_t probes);

// The nonlocal control on the same bench, via its shared-state shim.
LocalityVerdict locality_replay_check(const NonlocalControl& control, std::uint64_t seed,
                                      std::uint64_t probes);

}  // namespace redgreen

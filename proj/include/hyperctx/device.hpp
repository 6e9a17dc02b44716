#pragma once

#include "hyperctx/behavior.hpp"
#include "hyperctx/polytope.hpp"
#include "hyperctx/rng.hpp"
#include "hyperctx/scenario.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperctx {

enum class Shade { Dark, Light };

struct Sector {
    int color = 0;
    Shade shade = Shade::Dark;
};

enum class DeviceMode { Contextual, Overlapped };
enum class SelectionPolicy { RandomUniform, AgentChosen };

/// Toss axis and detector placement of one context. Slots are fixed positions
/// on the housing, numbered like the sectors; the resting configuration
/// decides which sector shows behind each slot, so the pair of sectors the
/// detector reads in each resting configuration is derived, not stored.
struct ContextGeometry {
    int axis = 0;
    std::array<int, 2> read_slots{0, 1};  // adjacent slots, contextual mode
};

/// The polygon device: 2n sectors around the object, one context per color
/// pair. Normative invariants (checked by validate_device):
///   - every color sits on exactly two sectors, k and k+n, opposite shades;
///   - contextual mode: context C_i's detector reads an adjacent slot pair
///     carrying colors i and i+1 in both resting configurations.
struct DeviceConfig {
    int colors = 5;                         // n
    std::vector<Sector> sectors;            // 2n sectors
    std::vector<ContextGeometry> geometry;  // one entry per context C_i
    DeviceMode mode = DeviceMode::Contextual;
    SelectionPolicy policy = SelectionPolicy::RandomUniform;
    int overlapped_side = 0;  // overlapped mode: 0 reads slots [0,n), 1 reads [n,2n)
};

/// The canonical decagon: sector k carries color k mod 5, dark iff k is even;
/// context C_i tosses about axis i and reads slots (i, i+1). One detector per
/// context, uniform context selection on single presses.
DeviceConfig default_device();

/// The rearranged device: same object, every detector replaced by one shared
/// detector reading the semicircle of slots [side*5, side*5+5). Presses name
/// the colors to report.
DeviceConfig overlapped_device(int side = 0);

/// Every invariant violation as one Issue; empty result means valid.
std::vector<Issue> validate_device(const DeviceConfig& config);

/// The n-cycle scenario the device realizes.
Scenario device_scenario(const DeviceConfig& config);

/// Resting configuration of the object. 0 leaves sector k behind slot k; 1 is
/// the antipodal placement (slot s shows sector s+n). A toss about any axis
/// selects between the two with a fair bit, so the per-axis orientation bit
/// equals the global configuration.
struct DeviceState {
    int configuration = 0;

    int sector_at_slot(int slot, int sector_count) const {
        return configuration == 0 ? slot : (slot + sector_count / 2) % sector_count;
    }
};

struct TrialRecord {
    std::string pressed;                    // context name or measurement label
    std::string mode;                       // "joint" | "single" | "sequential"
    std::vector<std::string> measurements;  // report order
    std::vector<std::string> outcomes;      // aligned with measurements
    std::string rng_seed_path;
};

/// Simultaneous press of a context's button pair: one toss about the context
/// axis, then the detector reads both colors. Contextual mode yields opposite
/// outcomes on every trial (asserted, not sampled).
/// Throws Error("UnknownContext").
TrialRecord press_joint(const DeviceConfig& config, int context_index, PressRandomness& rng);

/// Single-button press: a context containing the measurement is selected
/// (fair bit under random-uniform, caller-supplied under agent-chosen), the
/// toss is performed, and only the pressed color is read.
/// Throws Error("UnknownMeasurement"), Error("UnknownContext") when the
/// forced context does not contain the measurement, Error("AgentChoiceRequired").
TrialRecord press_single(const DeviceConfig& config, int measurement, PressRandomness& rng,
                         std::optional<int> forced_context = std::nullopt);

/// Two single presses in order; the measurements must be cyclically
/// consecutive. Outcomes are independent fair bits, so same-outcome pairs
/// occur, unlike joint mode. Throws Error("NonAdjacentPress").
TrialRecord press_sequential(const DeviceConfig& config, int first, int second, PressRandomness& rng);

enum class PressKind { Joint, Single, Sequential };

/// One schedule entry. Joint uses context_index; Single uses measurement and
/// optionally forced_context; Sequential uses measurement and second.
struct PressSpec {
    PressKind kind = PressKind::Joint;
    int context_index = -1;
    int measurement = -1;
    int second = -1;
    std::optional<int> forced_context;
};

/// Tallies from an experiment run: joint counts per (context, joint rank),
/// single-press counts per (measurement, outcome), sequential counts per
/// (pair's context, rank over outcomes in press order).
class EmpiricalBehavior {
  public:
    explicit EmpiricalBehavior(Scenario scenario);

    const Scenario& scenario() const { return scenario_; }

    const std::vector<std::vector<std::uint64_t>>& joint_counts() const { return joint_; }
    const std::vector<std::vector<std::uint64_t>>& single_counts() const { return single_; }
    const std::vector<std::vector<std::uint64_t>>& sequential_counts() const { return sequential_; }

    std::uint64_t joint_total(int context_index) const;
    std::uint64_t single_total(int measurement) const;
    std::uint64_t sequential_total(int context_index) const;

    void add_joint(int context_index, std::size_t joint_rank);
    void add_single(int measurement, int outcome);
    void add_sequential(int context_index, std::size_t rank);
    void merge(const EmpiricalBehavior& other);

    /// counts / total, floating.
    std::vector<std::vector<double>> joint_frequencies() const;

    /// Exact behavior with per-context denominators = trial counts.
    /// Throws Error("MissingContextData") when a context has no joint trials.
    Behavior rationalized() const;

  private:
    Scenario scenario_;
    std::vector<std::vector<std::uint64_t>> joint_;
    std::vector<std::vector<std::uint64_t>> single_;
    std::vector<std::vector<std::uint64_t>> sequential_;
};

enum class Execution { Serial, Parallel };

struct ExperimentOptions {
    Execution execution = Execution::Serial;
};

/// Runs the schedule, trials_per_press trials per entry. Trial (e, t) draws
/// its randomness from counter word seed/(e*trials_per_press + t), so the
/// parallel path reproduces the serial stream bit for bit and reruns with the
/// same seed are identical. When `log` is non-null it is resized to hold one
/// record per trial, indexed by that same global trial index.
/// Throws Error("EmptySchedule").
EmpiricalBehavior run_experiment(const DeviceConfig& config, const std::vector<PressSpec>& schedule,
                                 std::uint64_t seed, std::uint64_t trials_per_press,
                                 const ExperimentOptions& options = {},
                                 std::vector<TrialRecord>* log = nullptr);

/// The exact behavior the device generates, computed analytically through the
/// same detector read path the presses use: both resting configurations
/// weighted 1/2. Default contextual device: the generalized coin toss.
/// Overlapped device: the rearranged behavior, either side.
Behavior induced_behavior(const DeviceConfig& config);

/// Empirical data bridged to the analysis stack. All probability work happens
/// on the rationalized behavior in exact arithmetic; floats only summarize.
struct AnalysisReport {
    Behavior rationalized;
    Rational kcbs_value;  // exact cycle-correlation value of the rationalized behavior
    Rational kcbs_bound;  // classical bound, recomputed by vertex enumeration
    double kcbs_estimate = 0;
    double kcbs_ci_halfwidth = 0;  // 1.96 sigma, binomial normal approximation
    bool nd_exact = false;         // exact nondisturbance of the rationalized behavior
    bool nd_within_tolerance = true;  // marginal gaps within the 4 sigma guard
    double nd_max_discrepancy = 0;
    double nd_tolerance = 0;  // the guard at the worst marginal gap
    NcDecision decision;
    bool boundary_proximate = false;  // bound inside the CI (or attained exactly)
};

/// Rationalizes the counts, evaluates the cycle inequality with a normal
/// confidence interval, checks nondisturbance exactly and within a stated
/// statistical tolerance, and decides noncontextuality.
/// Throws Error("MissingContextData").
AnalysisReport estimate_and_certify(const EmpiricalBehavior& empirical);

}  // namespace hyperctx

#pragma once

#include <vector>

#include "socm/network.hpp"
#include "socm/rng.hpp"
#include "socm/traders.hpp"

namespace socm {

enum class DriveMode {
  // Every trader gains its own increment, uniform in [0, threshold - I_max).
  // Under exact arithmetic nobody can reach the threshold this way; the mode
  // exists for comparison runs.
  per_agent_uniform,
  // Every trader is shifted by the same threshold - I_max, so the currently
  // best-informed trader lands exactly on the threshold each tick.
  global_uniform,
};

struct InformationField {
  std::vector<double> levels;
  double threshold = 1.0;
  double alpha = 0.92;  // fraction of a toppling trader's information passed on
  DriveMode drive_mode = DriveMode::global_uniform;

  double max_level() const;
  double average_level() const;
  double total() const;
};

struct AvalancheRecord {
  long tick = 0;
  int initiator = 0;
  int distinct_agents = 0;  // distinct non-random traders that toppled
  long topplings = 0;       // topple events (re-topples counted each time)
  double imitated_price = 0.0;
};

struct RelaxOutcome {
  std::vector<AvalancheRecord> records;
  // Per record: the distinct toppled traders in first-topple order. The
  // initiator is always participants[r][0].
  std::vector<std::vector<int>> participants;
  long topplings = 0;
  // Information removed from the system during the cascade: per-topple
  // dissipation plus silent random-trader resets. Feeds dissipation_audit.
  double drained = 0.0;
};

// One tick of informative pressure. Returns the ids at or above the threshold
// afterwards, ascending. Throws if the field is not quiescent on entry
// (max level above the threshold).
std::vector<int> drive(InformationField& field, RandomSource& source);

// Runs the threshold cascade seeded by `activated` (ids at/above threshold,
// ascending). Random traders in the seed set are reset to zero silently; each
// non-random seed opens its own avalanche record and the cascade is processed
// as one FIFO queue. A toppling trader is zeroed and hands alpha/N_nn of its
// load to each non-random neighbor (N_nn = count of those neighbors; with none,
// the whole load dissipates). Neighbors are enqueued when they cross the
// threshold, tagged with the record whose topple reached them first; re-topples
// are allowed. Terminates with every trader strictly below the threshold.
RelaxOutcome relax(InformationField& field, const std::vector<int>& activated,
                   const NetworkTopology& topology, const std::vector<Trader>& traders,
                   long tick);

// Overwrites every participant's individual price with its record's initiator
// price, in record order (an agent in several records keeps the last one).
// Initiators keep their own price. Returns the number of prices overwritten.
long apply_imitation(const RelaxOutcome& outcome, std::vector<Trader>& traders);

// Checks the relax bookkeeping: |after - before + drained| must be below
// 1e-9 * before (absolute 1e-12 when before is zero). Returns the residual and
// throws std::logic_error when the contract is violated.
double dissipation_audit(double before, double after, const RelaxOutcome& outcome);

}  // namespace socm

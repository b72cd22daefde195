#include "socm/information.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace socm {

double InformationField::max_level() const {
  double best = 0.0;
  for (double v : levels) best = std::max(best, v);
  return best;
}

double InformationField::average_level() const {
  if (levels.empty()) return 0.0;
  double sum = 0.0;
  for (double v : levels) sum += v;
  return sum / static_cast<double>(levels.size());
}

double InformationField::total() const {
  double sum = 0.0;
  for (double v : levels) sum += v;
  return sum;
}

std::vector<int> drive(InformationField& field, RandomSource& source) {
  const double max_before = field.max_level();
  if (max_before > field.threshold)
    throw std::logic_error("drive: field not quiescent (max level above threshold)");

  const int n = static_cast<int>(field.levels.size());
  if (field.drive_mode == DriveMode::global_uniform) {
    // threshold - (max - I_i) rather than I_i + delta: exact at the top, so the
    // argmax (and any tie) lands on the threshold with no rounding shortfall.
    for (double& level : field.levels) level = field.threshold - (max_before - level);
  } else {
    const double span = field.threshold - max_before;
    for (double& level : field.levels) level += source.uniform(0.0, span);
  }

  std::vector<int> activated;
  for (int id = 0; id < n; ++id)
    if (field.levels[id] >= field.threshold) activated.push_back(id);
  return activated;
}

RelaxOutcome relax(InformationField& field, const std::vector<int>& activated,
                   const NetworkTopology& topology, const std::vector<Trader>& traders,
                   long tick) {
  RelaxOutcome outcome;
  if (activated.empty()) return outcome;

  const int n = static_cast<int>(field.levels.size());
  const double threshold = field.threshold;
  const double alpha = field.alpha;

  // Upper bound on topple events: every topple drains at least
  // (1 - alpha) * threshold when alpha < 1.
  const double total_before = field.total();
  const long topple_bound =
      alpha < 1.0 ? static_cast<long>(total_before / ((1.0 - alpha) * threshold)) + 1 : -1;

  struct Pending {
    int node;
    int record;
  };
  std::deque<Pending> queue;
  // Records that already counted a node as distinct. Interleaved multi-record
  // cascades can re-topple a node under an older record, so one last-record
  // slot per node is not enough.
  std::vector<std::vector<int>> counted(static_cast<std::size_t>(n));

  for (int id : activated) {
    if (field.levels[id] < threshold)
      throw std::invalid_argument("relax: activated id below threshold");
    if (traders[id].is_random()) {
      // Affected by the market climate only: reset without transmitting.
      outcome.drained += field.levels[id];
      field.levels[id] = 0.0;
      continue;
    }
    const int record = static_cast<int>(outcome.records.size());
    outcome.records.push_back(
        {tick, id, 0, 0, traders[id].individual_price});
    outcome.participants.emplace_back();
    queue.push_back({id, record});
  }

  while (!queue.empty()) {
    const auto [node, record] = queue.front();
    queue.pop_front();

    const double load = field.levels[node];
    field.levels[node] = 0.0;

    AvalancheRecord& rec = outcome.records[record];
    ++rec.topplings;
    ++outcome.topplings;
    if (topple_bound >= 0 && outcome.topplings > topple_bound)
      throw std::logic_error("relax: topple count exceeded the dissipation bound");
    auto& seen = counted[node];
    if (std::find(seen.begin(), seen.end(), record) == seen.end()) {
      seen.push_back(record);
      ++rec.distinct_agents;
      outcome.participants[record].push_back(node);
    }

    int live_neighbors = 0;
    for (int nbr : topology.adjacency[node])
      if (!traders[nbr].is_random()) ++live_neighbors;

    if (live_neighbors == 0) {
      outcome.drained += load;  // nobody to tell: the whole load dissipates
      continue;
    }

    outcome.drained += (1.0 - alpha) * load;
    const double share = alpha * load / static_cast<double>(live_neighbors);
    for (int nbr : topology.adjacency[node]) {
      if (traders[nbr].is_random()) continue;
      const bool was_below = field.levels[nbr] < threshold;
      field.levels[nbr] += share;
      if (was_below && field.levels[nbr] >= threshold) queue.push_back({nbr, record});
    }
  }
  return outcome;
}

long apply_imitation(const RelaxOutcome& outcome, std::vector<Trader>& traders) {
  long overwritten = 0;
  for (std::size_t r = 0; r < outcome.records.size(); ++r) {
    const AvalancheRecord& rec = outcome.records[r];
    for (int id : outcome.participants[r]) {
      if (id == rec.initiator) continue;
      traders[id].individual_price = rec.imitated_price;
      ++overwritten;
    }
  }
  return overwritten;
}

double dissipation_audit(double before, double after, const RelaxOutcome& outcome) {
  const double residual = std::abs(after - before + outcome.drained);
  const double tolerance = before > 0.0 ? 1e-9 * before : 1e-12;
  if (residual >= tolerance)
    throw std::logic_error("dissipation_audit: information bookkeeping residual above tolerance");
  return residual;
}

}  // namespace socm

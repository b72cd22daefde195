#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "socm/information.hpp"
#include "socm/network.hpp"
#include "socm/rng.hpp"
#include "socm/traders.hpp"

namespace socm {

// beta * I_av is capped here before exponentiation; cap events are counted in
// MarketState::cap_count and reported in the run manifest.
inline constexpr double kOmegaExponentCap = 700.0;

struct SimConfig {
  int n_side = 40;
  Boundary boundary = Boundary::open;
  double rewire_prob = 0.02;

  double fraction_fundamentalists = 0.25;
  double fraction_chartists = 0.75;
  double fraction_random = 0.0;

  double p_f = 5000.0;
  double phi = 2.0;
  double kappa = 2.0;
  int m_fixed = 45;
  int m_min = 1;
  int m_max = 90;
  double sigma = 200.0;
  double beta = 16.0;
  double alpha = 0.92;
  double i_threshold = 1.0;

  DriveMode drive_mode = DriveMode::global_uniform;
  bool drive_enabled = true;

  bool phi_variable = false;
  bool kappa_variable = false;
  bool m_variable = true;
  bool p_f_variable = false;
  double phi_stdev = 0.2;
  double kappa_stdev = 0.2;
  double p_f_stdev = 500.0;

  // One shared pricing-noise draw per tick instead of one per trader.
  bool shared_noise = false;
  // Aggregate with group-proportion-weighted group *sums* (the double-counting
  // variant) instead of the grand mean of individual prices.
  bool literal_group_weighting = false;

  long ticks = 10000;
  std::uint64_t seed = 1;
  double price_floor = kDefaultPriceFloor;
  double initial_price = 5000.0;

  // Throws std::invalid_argument naming the first offending field.
  void validate() const;
  PopulationSpec population_spec() const;
};

struct MarketState {
  long tick = 0;
  std::vector<double> prices;  // length tick + 1, prices[0] == initial price
  std::vector<Trader> traders;
  InformationField field;
  std::vector<AvalancheRecord> avalanche_log;
  long clamp_count = 0;  // prices that ended up at the floor
  long cap_count = 0;    // omega exponent caps
};

// Global noise term: noise * exp(min(beta * average_information, cap)).
double omega(double average_information, double beta, double noise);

// Next global price: the mean of all individual prices plus the omega term,
// clamped to the floor. The group-proportion-weighted average of group means
// equals this grand mean, so no grouping is needed; literal_group_weighting
// selects the weighted group-sum variant instead.
double aggregate_price(const std::vector<Trader>& traders, double omega_value,
                       double price_floor = kDefaultPriceFloor,
                       bool literal_group_weighting = false);

// One market instance: topology, population and information field built from
// the config, stepped one tick at a time. Single-threaded by construction;
// parallelism belongs at the ensemble level, one instance per task.
class Market {
 public:
  explicit Market(const SimConfig& config);

  // One tick: drive, individual pricing, avalanche relaxation (with the
  // dissipation audit enforced), imitation, omega, aggregation.
  void step();
  void run_remaining();  // step() until state().tick == config().ticks

  const SimConfig& config() const { return config_; }
  const NetworkTopology& topology() const { return topology_; }
  const MarketState& state() const { return state_; }

 private:
  SimConfig config_;
  NetworkTopology topology_;
  MarketState state_;
  int max_window_ = 1;
  std::vector<double> window_sums_;  // per-tick suffix sums of the price history

  RandomSource drive_rng_;
  RandomSource noise_rng_;
  RandomSource random_price_rng_;
  RandomSource omega_rng_;
};

struct RunResult {
  SimConfig config;
  NetworkTopology topology;
  std::vector<double> prices;
  std::vector<AvalancheRecord> avalanches;
  std::vector<Trader> population;
  long clamp_count = 0;
  long cap_count = 0;
};

// Builds a market from the config and runs it for config.ticks ticks.
RunResult run(const SimConfig& config);

}  // namespace socm

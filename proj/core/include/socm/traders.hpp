#pragma once

#include <span>
#include <variant>
#include <vector>

#include "socm/network.hpp"
#include "socm/rng.hpp"

namespace socm {

// Prices below this are clamped up; keeps every price positive so both the
// random-trader draw range and the log-returns stay well defined.
inline constexpr double kDefaultPriceFloor = 1e-2;

// Heterogeneous sensitivity draws are clamped this far away from zero.
inline constexpr double kMinSensitivity = 1e-2;

struct Fundamentalist {
  double phi = 2.0;                 // weight of the gap to the fundamental price
  double fundamental_price = 5000.0;
};

struct Chartist {
  double kappa = 2.0;  // trend sensitivity; negative flips to trend reversal
  int window = 45;     // moving-average length, >= 1
};

struct RandomTrader {};

using TraderRole = std::variant<Fundamentalist, Chartist, RandomTrader>;

struct Trader {
  int id = 0;
  TraderRole role;
  double information = 0.0;
  double individual_price = 0.0;

  bool is_random() const { return std::holds_alternative<RandomTrader>(role); }
};

struct PopulationSpec {
  int total = 0;
  double fraction_fundamentalists = 0.25;
  double fraction_chartists = 0.75;
  double fraction_random = 0.0;

  double p_f = 5000.0;
  double phi = 2.0;
  double kappa = 2.0;
  int m_fixed = 45;
  int m_min = 1;
  int m_max = 90;

  bool phi_variable = false;
  bool kappa_variable = false;
  bool m_variable = true;
  bool p_f_variable = false;
  double phi_stdev = 0.2;
  double kappa_stdev = 0.2;
  double p_f_stdev = 500.0;

  double i_threshold = 1.0;
  double initial_price = 5000.0;
};

struct RoleCounts {
  int fundamentalists = 0;
  int chartists = 0;
  int random = 0;
};

// Largest-remainder rounding of the composition fractions to integer counts
// summing to spec.total. Fractions must be nonnegative and sum to 1 within
// 1e-9, otherwise throws.
RoleCounts role_counts(const PopulationSpec& spec);

// Builds one trader per topology node. Roles are dealt onto node ids through a
// uniform random permutation; per-trader parameters are then drawn in node-id
// order (normal for phi/kappa/p_f when variable, integer-uniform over
// [m_min, m_max] for the window). Information starts uniform in [0, i_threshold)
// and every individual price starts at initial_price.
std::vector<Trader> populate(const PopulationSpec& spec, const NetworkTopology& topology,
                             RandomSource& source);

// Individual pricing rules. Every result is clamped to price_floor from below.
double price_fundamentalist(double last_price, double phi, double fundamental_price,
                            double noise, double price_floor = kDefaultPriceFloor);
double price_chartist(double last_price, double kappa, int window, double window_average,
                      double noise, double price_floor = kDefaultPriceFloor);
double price_random(double last_price, RandomSource& source,
                    double price_floor = kDefaultPriceFloor);

// Mean of the last min(window, size) entries, accumulated newest-first.
double moving_average(std::span<const double> history, int window);

}  // namespace socm

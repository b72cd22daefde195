#include "socm/traders.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace socm {

namespace {

double clamp_away_from_zero(double value) {
  if (std::abs(value) >= kMinSensitivity) return value;
  return value < 0.0 ? -kMinSensitivity : kMinSensitivity;
}

}  // namespace

RoleCounts role_counts(const PopulationSpec& spec) {
  const std::array<double, 3> fractions = {spec.fraction_fundamentalists,
                                           spec.fraction_chartists, spec.fraction_random};
  for (double f : fractions)
    if (!(f >= 0.0)) throw std::invalid_argument("role_counts: negative composition fraction");
  const double sum = fractions[0] + fractions[1] + fractions[2];
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("role_counts: composition fractions must sum to 1");
  if (spec.total < 0) throw std::invalid_argument("role_counts: negative population");

  std::array<int, 3> counts;
  std::array<double, 3> remainders;
  int assigned = 0;
  for (int g = 0; g < 3; ++g) {
    const double exact = fractions[g] * spec.total;
    counts[g] = static_cast<int>(std::floor(exact));
    remainders[g] = exact - counts[g];
    assigned += counts[g];
  }
  // Hand the leftover seats to the largest remainders; ties go to the
  // earlier group (fundamentalists, chartists, random).
  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return remainders[a] > remainders[b]; });
  for (int leftover = spec.total - assigned, k = 0; leftover > 0; --leftover, ++k)
    ++counts[order[k % 3]];

  return {counts[0], counts[1], counts[2]};
}

std::vector<Trader> populate(const PopulationSpec& spec, const NetworkTopology& topology,
                             RandomSource& source) {
  if (spec.total != topology.node_count())
    throw std::invalid_argument("populate: spec.total must equal the topology node count");
  if (spec.m_min < 1 || spec.m_max < spec.m_min)
    throw std::invalid_argument("populate: window range requires 1 <= m_min <= m_max");
  if (spec.m_fixed < 1) throw std::invalid_argument("populate: m_fixed < 1");

  const RoleCounts counts = role_counts(spec);
  const int n = spec.total;

  // Uniform random permutation decides which node gets which role.
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(source.uniform_int(0, i));
    std::swap(ids[i], ids[j]);
  }

  enum class Kind : unsigned char { fundamentalist, chartist, random };
  std::vector<Kind> kind(n, Kind::random);
  int cursor = 0;
  for (int k = 0; k < counts.fundamentalists; ++k) kind[ids[cursor++]] = Kind::fundamentalist;
  for (int k = 0; k < counts.chartists; ++k) kind[ids[cursor++]] = Kind::chartist;

  std::vector<Trader> traders(n);
  for (int node = 0; node < n; ++node) {
    Trader& trader = traders[node];
    trader.id = node;
    switch (kind[node]) {
      case Kind::fundamentalist: {
        Fundamentalist role;
        role.phi = spec.phi_variable
                       ? clamp_away_from_zero(source.normal(spec.phi, spec.phi_stdev))
                       : spec.phi;
        role.fundamental_price =
            spec.p_f_variable ? std::max(source.normal(spec.p_f, spec.p_f_stdev), kDefaultPriceFloor)
                              : spec.p_f;
        trader.role = role;
        break;
      }
      case Kind::chartist: {
        Chartist role;
        role.kappa = spec.kappa_variable
                         ? clamp_away_from_zero(source.normal(spec.kappa, spec.kappa_stdev))
                         : spec.kappa;
        role.window = spec.m_variable
                          ? static_cast<int>(source.uniform_int(spec.m_min, spec.m_max))
                          : spec.m_fixed;
        trader.role = role;
        break;
      }
      case Kind::random:
        trader.role = RandomTrader{};
        break;
    }
    trader.information = source.uniform(0.0, spec.i_threshold);
    trader.individual_price = spec.initial_price;
  }
  return traders;
}

double price_fundamentalist(double last_price, double phi, double fundamental_price,
                            double noise, double price_floor) {
  if (!std::isfinite(last_price) || !std::isfinite(phi) || !std::isfinite(fundamental_price) ||
      !std::isfinite(noise))
    throw std::domain_error("price_fundamentalist: non-finite input");
  return std::max(price_floor, last_price + phi * (fundamental_price - last_price) + noise);
}

double price_chartist(double last_price, double kappa, int window, double window_average,
                      double noise, double price_floor) {
  if (window < 1) throw std::invalid_argument("price_chartist: window < 1");
  if (!std::isfinite(last_price) || !std::isfinite(kappa) || !std::isfinite(window_average) ||
      !std::isfinite(noise))
    throw std::domain_error("price_chartist: non-finite input");
  return std::max(price_floor,
                  last_price + (kappa / window) * (last_price - window_average) + noise);
}

double price_random(double last_price, RandomSource& source, double price_floor) {
  return std::max(price_floor, source.uniform(0.0, last_price));
}

double moving_average(std::span<const double> history, int window) {
  if (history.empty()) throw std::invalid_argument("moving_average: empty history");
  if (window < 1) throw std::invalid_argument("moving_average: window < 1");
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(window), history.size());
  double sum = 0.0;
  for (std::size_t k = 1; k <= take; ++k) sum += history[history.size() - k];
  return sum / static_cast<double>(take);
}

}  // namespace socm

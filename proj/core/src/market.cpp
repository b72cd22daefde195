#include "socm/market.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace socm {

namespace {

void require(bool ok, const char* field) {
  if (!ok) throw std::invalid_argument(std::string("SimConfig: invalid ") + field);
}

}  // namespace

void SimConfig::validate() const {
  require(n_side >= 2, "n_side (need >= 2)");
  require(rewire_prob >= 0.0 && rewire_prob <= 1.0, "rewire_prob (need [0, 1])");
  require(fraction_fundamentalists >= 0.0, "fraction_fundamentalists (need >= 0)");
  require(fraction_chartists >= 0.0, "fraction_chartists (need >= 0)");
  require(fraction_random >= 0.0, "fraction_random (need >= 0)");
  require(std::abs(fraction_fundamentalists + fraction_chartists + fraction_random - 1.0) <= 1e-9,
          "composition fractions (need sum 1)");
  require(p_f > 0.0 && std::isfinite(p_f), "p_f (need > 0)");
  require(std::isfinite(phi), "phi (need finite)");
  require(std::isfinite(kappa), "kappa (need finite)");
  require(m_fixed >= 1, "m_fixed (need >= 1)");
  require(m_min >= 1 && m_max >= m_min, "window range (need 1 <= m_min <= m_max)");
  require(sigma >= 0.0 && std::isfinite(sigma), "sigma (need >= 0)");
  require(std::isfinite(beta), "beta (need finite)");
  require(alpha > 0.0 && alpha <= 1.0, "alpha (need (0, 1])");
  require(i_threshold > 0.0, "i_threshold (need > 0)");
  require(phi_stdev >= 0.0, "phi_stdev (need >= 0)");
  require(kappa_stdev >= 0.0, "kappa_stdev (need >= 0)");
  require(p_f_stdev >= 0.0, "p_f_stdev (need >= 0)");
  require(ticks >= 0, "ticks (need >= 0)");
  require(price_floor > 0.0, "price_floor (need > 0)");
  require(initial_price >= price_floor, "initial_price (need >= price_floor)");
}

PopulationSpec SimConfig::population_spec() const {
  PopulationSpec spec;
  spec.total = n_side * n_side;
  spec.fraction_fundamentalists = fraction_fundamentalists;
  spec.fraction_chartists = fraction_chartists;
  spec.fraction_random = fraction_random;
  spec.p_f = p_f;
  spec.phi = phi;
  spec.kappa = kappa;
  spec.m_fixed = m_fixed;
  spec.m_min = m_min;
  spec.m_max = m_max;
  spec.phi_variable = phi_variable;
  spec.kappa_variable = kappa_variable;
  spec.m_variable = m_variable;
  spec.p_f_variable = p_f_variable;
  spec.phi_stdev = phi_stdev;
  spec.kappa_stdev = kappa_stdev;
  spec.p_f_stdev = p_f_stdev;
  spec.i_threshold = i_threshold;
  spec.initial_price = initial_price;
  return spec;
}

double omega(double average_information, double beta, double noise) {
  if (average_information < 0.0)
    throw std::invalid_argument("omega: negative average information");
  const double exponent = std::min(beta * average_information, kOmegaExponentCap);
  return noise * std::exp(exponent);
}

double aggregate_price(const std::vector<Trader>& traders, double omega_value,
                       double price_floor, bool literal_group_weighting) {
  if (traders.empty()) throw std::invalid_argument("aggregate_price: empty population");
  const double n = static_cast<double>(traders.size());

  double value;
  if (!literal_group_weighting) {
    double sum = 0.0;
    for (const Trader& trader : traders) sum += trader.individual_price;
    value = sum / n + omega_value;
  } else {
    double sum_f = 0.0, sum_c = 0.0, sum_r = 0.0;
    double count_f = 0.0, count_c = 0.0, count_r = 0.0;
    for (const Trader& trader : traders) {
      if (std::holds_alternative<Fundamentalist>(trader.role)) {
        sum_f += trader.individual_price;
        ++count_f;
      } else if (std::holds_alternative<Chartist>(trader.role)) {
        sum_c += trader.individual_price;
        ++count_c;
      } else {
        sum_r += trader.individual_price;
        ++count_r;
      }
    }
    value = (count_f / n) * sum_f + (count_c / n) * sum_c + (count_r / n) * sum_r + omega_value;
  }
  return std::max(price_floor, value);
}

Market::Market(const SimConfig& config)
    : config_(config),
      drive_rng_(config.seed, Stream::drive),
      noise_rng_(config.seed, Stream::pricing_noise),
      random_price_rng_(config.seed, Stream::random_price),
      omega_rng_(config.seed, Stream::omega_noise) {
  config_.validate();

  RandomSource rewire_rng(config_.seed, Stream::rewiring);
  topology_ = rewire(build_regular_lattice(config_.n_side, config_.boundary),
                     config_.rewire_prob, rewire_rng);

  RandomSource population_rng(config_.seed, Stream::population);
  state_.traders = populate(config_.population_spec(), topology_, population_rng);

  state_.field.levels.resize(state_.traders.size());
  for (std::size_t i = 0; i < state_.traders.size(); ++i)
    state_.field.levels[i] = state_.traders[i].information;
  state_.field.threshold = config_.i_threshold;
  state_.field.alpha = config_.alpha;
  state_.field.drive_mode = config_.drive_mode;

  state_.prices.reserve(static_cast<std::size_t>(config_.ticks) + 1);
  state_.prices.push_back(config_.initial_price);

  for (const Trader& trader : state_.traders)
    if (const auto* chartist = std::get_if<Chartist>(&trader.role))
      max_window_ = std::max(max_window_, chartist->window);
  window_sums_.resize(static_cast<std::size_t>(max_window_) + 1);
}

void Market::step() {
  const double last_price = state_.prices.back();
  const double sigma = config_.sigma;
  const double floor = config_.price_floor;

  // (1) informative drive
  std::vector<int> activated;
  if (config_.drive_enabled) activated = drive(state_.field, drive_rng_);

  // (2) individual pricing off the last global price; chartists read the
  // moving average of the global history. Suffix sums make every window
  // length available in one backward pass.
  const std::size_t depth =
      std::min<std::size_t>(static_cast<std::size_t>(max_window_), state_.prices.size());
  window_sums_[0] = 0.0;
  for (std::size_t k = 1; k <= depth; ++k)
    window_sums_[k] = window_sums_[k - 1] + state_.prices[state_.prices.size() - k];

  double shared_draw = 0.0;
  if (config_.shared_noise) shared_draw = noise_rng_.uniform(-sigma, sigma);

  for (Trader& trader : state_.traders) {
    if (const auto* fundamentalist = std::get_if<Fundamentalist>(&trader.role)) {
      const double eps =
          config_.shared_noise ? shared_draw : noise_rng_.uniform(-sigma, sigma);
      trader.individual_price = price_fundamentalist(
          last_price, fundamentalist->phi, fundamentalist->fundamental_price, eps, floor);
    } else if (const auto* chartist = std::get_if<Chartist>(&trader.role)) {
      const double eps =
          config_.shared_noise ? shared_draw : noise_rng_.uniform(-sigma, sigma);
      const std::size_t take =
          std::min<std::size_t>(static_cast<std::size_t>(chartist->window), depth);
      const double window_average = window_sums_[take] / static_cast<double>(take);
      trader.individual_price = price_chartist(last_price, chartist->kappa, chartist->window,
                                               window_average, eps, floor);
    } else {
      trader.individual_price = price_random(last_price, random_price_rng_, floor);
    }
    if (trader.individual_price <= floor) ++state_.clamp_count;
  }

  // (3) avalanches, with the bookkeeping audit enforced every tick
  const double information_before = state_.field.total();
  RelaxOutcome outcome = relax(state_.field, activated, topology_, state_.traders, state_.tick);
  dissipation_audit(information_before, state_.field.total(), outcome);

  // (4) imitation
  apply_imitation(outcome, state_.traders);
  state_.avalanche_log.insert(state_.avalanche_log.end(), outcome.records.begin(),
                              outcome.records.end());

  // (5) global noise from the post-relaxation information climate
  const double average_information = state_.field.average_level();
  const double omega_noise = omega_rng_.uniform(-sigma, sigma);
  if (config_.beta * average_information > kOmegaExponentCap) ++state_.cap_count;
  const double omega_value = omega(average_information, config_.beta, omega_noise);

  // (6) aggregation
  const double next_price =
      aggregate_price(state_.traders, omega_value, floor, config_.literal_group_weighting);
  if (next_price <= floor) ++state_.clamp_count;
  state_.prices.push_back(next_price);
  ++state_.tick;
}

void Market::run_remaining() {
  while (state_.tick < config_.ticks) step();
}

RunResult run(const SimConfig& config) {
  Market market(config);
  market.run_remaining();
  RunResult result;
  result.config = market.config();
  result.topology = market.topology();
  result.prices = market.state().prices;
  result.avalanches = market.state().avalanche_log;
  result.population = market.state().traders;
  for (std::size_t i = 0; i < result.population.size(); ++i)
    result.population[i].information = market.state().field.levels[i];
  result.clamp_count = market.state().clamp_count;
  result.cap_count = market.state().cap_count;
  return result;
}

}  // namespace socm

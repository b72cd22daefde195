#include "socm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace socm::stats {

namespace {

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_stdev(std::span<const double> values) {
  const double mean = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace

ReturnsSeries log_returns(std::span<const double> prices) {
  if (prices.size() < 2) throw std::invalid_argument("log_returns: need at least 2 prices");
  ReturnsSeries series;
  series.source_length = prices.size();
  series.values.reserve(prices.size() - 1);
  for (std::size_t i = 0; i < prices.size(); ++i)
    if (!(prices[i] > 0.0))
      throw std::domain_error("log_returns: nonpositive price at row " + std::to_string(i));
  for (std::size_t i = 0; i + 1 < prices.size(); ++i)
    series.values.push_back(std::log(prices[i + 1]) - std::log(prices[i]));
  return series;
}

ReturnsSeries normalize(const ReturnsSeries& returns) {
  if (returns.values.size() < 2)
    throw std::invalid_argument("normalize: need at least 2 returns");
  const double mean = mean_of(returns.values);
  const double stdev = sample_stdev(returns.values);
  if (!(stdev > 0.0)) throw std::domain_error("normalize: degenerate series (zero variance)");
  ReturnsSeries out;
  out.source_length = returns.source_length;
  out.values.reserve(returns.values.size());
  for (double v : returns.values) out.values.push_back((v - mean) / stdev);
  return out;
}

Moments moments(std::span<const double> values) {
  if (values.size() < 4) throw std::invalid_argument("moments: need at least 4 values");
  const double n = static_cast<double>(values.size());
  const double mean = mean_of(values);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  Moments result;
  result.mean = mean;
  result.stdev = std::sqrt(m2 * n / (n - 1.0));
  if (m2 > 0.0) {
    result.skewness = m3 / std::pow(m2, 1.5);
    result.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  } else {
    result.skewness = std::numeric_limits<double>::quiet_NaN();
    result.excess_kurtosis = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

std::vector<PdfBin> empirical_pdf(std::span<const double> values, double bin_width,
                                  double range) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("empirical_pdf: bin_width <= 0");
  if (!(range > 0.0)) throw std::invalid_argument("empirical_pdf: range <= 0");
  const auto bins = static_cast<std::size_t>(std::llround(2.0 * range / bin_width));
  if (bins == 0) throw std::invalid_argument("empirical_pdf: no bins in range");

  std::vector<std::size_t> counts(bins, 0);
  for (double v : values) {
    if (v < -range || v > range) continue;
    auto idx = static_cast<std::size_t>((v + range) / bin_width);
    if (idx >= bins) idx = bins - 1;  // right edge joins the last bin
    ++counts[idx];
  }

  const double total = static_cast<double>(values.size());
  std::vector<PdfBin> pdf(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    pdf[i].center = -range + (static_cast<double>(i) + 0.5) * bin_width;
    pdf[i].density = total > 0.0 ? static_cast<double>(counts[i]) / (total * bin_width) : 0.0;
  }
  return pdf;
}

double q_gaussian(double x, double q, double a, double b) {
  if (q == 1.0) return a * std::exp(-b * x * x);
  const double bracket_term = (q - 1.0) * b * x * x;
  if (1.0 + bracket_term <= 0.0) return 0.0;  // compact support for q < 1
  // [1 + (q-1) B x^2]^{1/(1-q)} via log1p keeps the q -> 1 limit stable
  return a * std::exp(std::log1p(bracket_term) / (1.0 - q));
}

namespace {

struct SimplexPoint {
  double q, a, b, value;
};

double q_fit_objective(const std::vector<PdfBin>& bins, double q, double a, double b) {
  if (!(q > 1.0) || !(q < 3.0) || !(a > 0.0) || !(b > 0.0))
    return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const PdfBin& bin : bins) {
    const double model = q_gaussian(bin.center, q, a, b);
    const double r = std::log(bin.density) - std::log(model);
    sum += r * r;
  }
  return std::isfinite(sum) ? sum : std::numeric_limits<double>::infinity();
}

// Standard Nelder-Mead on (q, a, b); returns true when the simplex collapsed
// below tolerance before the iteration cap.
bool nelder_mead(const std::vector<PdfBin>& bins, SimplexPoint& best, double q0, double a0,
                 double b0) {
  auto eval = [&](double q, double a, double b) {
    return SimplexPoint{q, a, b, q_fit_objective(bins, q, a, b)};
  };
  SimplexPoint simplex[4] = {
      eval(q0, a0, b0),
      eval(q0 + 0.15, a0, b0),
      eval(q0, a0 * 1.4, b0),
      eval(q0, a0, b0 * 1.6),
  };

  constexpr int kMaxIterations = 4000;
  constexpr double kTolerance = 1e-13;
  auto by_value = [](const SimplexPoint& lhs, const SimplexPoint& rhs) {
    return lhs.value < rhs.value;
  };

  for (int iteration = 0; iteration < kMaxIterations; ++iteration) {
    std::sort(simplex, simplex + 4, by_value);
    const double spread = simplex[3].value - simplex[0].value;
    if (std::isfinite(simplex[0].value) &&
        spread <= kTolerance * (1.0 + std::abs(simplex[0].value))) {
      best = simplex[0];
      return true;
    }

    const double cq = (simplex[0].q + simplex[1].q + simplex[2].q) / 3.0;
    const double ca = (simplex[0].a + simplex[1].a + simplex[2].a) / 3.0;
    const double cb = (simplex[0].b + simplex[1].b + simplex[2].b) / 3.0;
    const SimplexPoint& worst = simplex[3];

    auto along = [&](double t) {
      return eval(cq + t * (cq - worst.q), ca + t * (ca - worst.a), cb + t * (cb - worst.b));
    };

    SimplexPoint reflected = along(1.0);
    if (reflected.value < simplex[0].value) {
      SimplexPoint expanded = along(2.0);
      simplex[3] = expanded.value < reflected.value ? expanded : reflected;
      continue;
    }
    if (reflected.value < simplex[2].value) {
      simplex[3] = reflected;
      continue;
    }
    SimplexPoint contracted = along(reflected.value < worst.value ? 0.5 : -0.5);
    if (contracted.value < std::min(reflected.value, worst.value)) {
      simplex[3] = contracted;
      continue;
    }
    for (int i = 1; i < 4; ++i)  // shrink toward the best vertex
      simplex[i] = eval(simplex[0].q + 0.5 * (simplex[i].q - simplex[0].q),
                        simplex[0].a + 0.5 * (simplex[i].a - simplex[0].a),
                        simplex[0].b + 0.5 * (simplex[i].b - simplex[0].b));
  }
  std::sort(simplex, simplex + 4, by_value);
  best = simplex[0];
  return false;
}

}  // namespace

QGaussianFit fit_q_gaussian(const std::vector<PdfBin>& pdf) {
  std::vector<PdfBin> bins;
  for (const PdfBin& bin : pdf)
    if (bin.density > 0.0) bins.push_back(bin);
  if (bins.size() < 8)
    throw std::invalid_argument("fit_q_gaussian: need at least 8 nonzero-density bins");

  double peak = 0.0;
  for (const PdfBin& bin : bins) peak = std::max(peak, bin.density);
  if (!(peak > 0.0)) throw std::invalid_argument("fit_q_gaussian: empty histogram");

  constexpr double kStartQ[] = {1.1, 1.3, 1.5, 1.7, 2.0};
  bool any_converged = false;
  QGaussianFit fit;
  fit.objective = std::numeric_limits<double>::infinity();

  for (double q0 : kStartQ) {
    SimplexPoint found{};
    bool converged = nelder_mead(bins, found, q0, peak, 1.0);
    // one restart around the found vertex tightens simplex-shape artifacts
    if (converged) converged = nelder_mead(bins, found, found.q, found.a, found.b);
    if (!converged) continue;
    any_converged = true;
    if (found.value < fit.objective) {
      fit.q = found.q;
      fit.a = found.a;
      fit.b = found.b;
      fit.objective = found.value;
    }
  }
  if (!any_converged) throw std::runtime_error("fit_q_gaussian: no restart converged");
  return fit;
}

std::vector<double> acf(std::span<const double> values, int max_lag) {
  if (max_lag < 0) throw std::invalid_argument("acf: negative max_lag");
  if (static_cast<std::size_t>(max_lag) >= values.size() / 2)
    throw std::invalid_argument("acf: max_lag must be below length/2");
  const double mean = mean_of(values);
  double denom = 0.0;
  for (double v : values) denom += (v - mean) * (v - mean);
  if (!(denom > 0.0)) throw std::domain_error("acf: degenerate series (zero variance)");

  std::vector<double> out(static_cast<std::size_t>(max_lag) + 1);
  for (int lag = 0; lag <= max_lag; ++lag) {
    double num = 0.0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(lag) < values.size(); ++t)
      num += (values[t] - mean) * (values[t + static_cast<std::size_t>(lag)] - mean);
    out[static_cast<std::size_t>(lag)] = num / denom;
  }
  return out;
}

std::vector<double> abs_acf(std::span<const double> values, int max_lag) {
  std::vector<double> magnitudes(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) magnitudes[i] = std::abs(values[i]);
  return acf(magnitudes, max_lag);
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
}

// Acklam's rational approximation to the inverse normal CDF (|rel err| < 1.2e-9).
double acklam_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double u = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
           ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double u = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
           ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
  }
  const double u = p - 0.5;
  const double r = u * u;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("normal_quantile: p outside (0, 1)");
  double x = acklam_quantile(p);
  x -= (normal_cdf(x) - p) / normal_pdf(x);  // one Newton polish
  return x;
}

std::vector<QqPoint> qq_points(std::span<const double> values) {
  if (values.size() < 10) throw std::invalid_argument("qq_points: need at least 10 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<QqPoint> points(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    points[i].theoretical = normal_quantile((static_cast<double>(i) + 0.5) / n);
    points[i].empirical = sorted[i];
  }
  return points;
}

OlsFit ols(std::span<const double> y, const std::vector<std::vector<double>>& columns) {
  const std::size_t rows = y.size();
  const std::size_t cols = columns.size();
  if (cols == 0) throw std::invalid_argument("ols: no regressors");
  if (rows <= cols) throw std::invalid_argument("ols: need more rows than columns");
  for (const auto& column : columns)
    if (column.size() != rows) throw std::invalid_argument("ols: ragged design matrix");

  // Householder QR on a column-major working copy.
  std::vector<std::vector<double>> work = columns;
  std::vector<double> rhs(y.begin(), y.end());
  std::vector<double> r(cols * cols, 0.0);

  double max_col_norm = 0.0;
  for (const auto& column : columns) {
    double ss = 0.0;
    for (double v : column) ss += v * v;
    max_col_norm = std::max(max_col_norm, std::sqrt(ss));
  }
  const double rank_tolerance = 1e-12 * std::max(max_col_norm, 1.0);

  for (std::size_t k = 0; k < cols; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm += work[k][i] * work[k][i];
    norm = std::sqrt(norm);
    if (norm <= rank_tolerance)
      throw std::runtime_error("ols: collinear (rank-deficient) design matrix");

    const double alpha = work[k][k] > 0.0 ? -norm : norm;
    std::vector<double> v(rows - k);
    v[0] = work[k][k] - alpha;
    for (std::size_t i = k + 1; i < rows; ++i) v[i - k] = work[k][i];
    double vnorm2 = 0.0;
    for (double vi : v) vnorm2 += vi * vi;

    work[k][k] = alpha;
    if (vnorm2 > 0.0) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * work[j][i];
        const double scale = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < rows; ++i) work[j][i] -= scale * v[i - k];
      }
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * rhs[i];
      const double scale = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < rows; ++i) rhs[i] -= scale * v[i - k];
    }
    for (std::size_t j = k; j < cols; ++j) r[k * cols + j] = work[j][k];
  }

  for (std::size_t k = 0; k < cols; ++k)
    if (std::abs(r[k * cols + k]) <= rank_tolerance)
      throw std::runtime_error("ols: collinear (rank-deficient) design matrix");

  OlsFit fit;
  fit.coefficients.assign(cols, 0.0);
  for (std::size_t k = cols; k-- > 0;) {
    double sum = rhs[k];
    for (std::size_t j = k + 1; j < cols; ++j) sum -= r[k * cols + j] * fit.coefficients[j];
    fit.coefficients[k] = sum / r[k * cols + k];
  }

  double rss = 0.0;
  for (std::size_t i = cols; i < rows; ++i) rss += rhs[i] * rhs[i];
  fit.residual_variance = rss / static_cast<double>(rows - cols);

  // (X'X)^-1 = R^-1 R^-T; diagonal via the rows of R^-1.
  std::vector<double> r_inv(cols * cols, 0.0);
  for (std::size_t k = 0; k < cols; ++k) {
    r_inv[k * cols + k] = 1.0 / r[k * cols + k];
    for (std::size_t j = k + 1; j < cols; ++j) {
      double sum = 0.0;
      for (std::size_t l = k; l < j; ++l) sum += r_inv[k * cols + l] * r[l * cols + j];
      r_inv[k * cols + j] = -sum / r[j * cols + j];
    }
  }
  fit.standard_errors.assign(cols, 0.0);
  for (std::size_t k = 0; k < cols; ++k) {
    double ss = 0.0;
    for (std::size_t j = k; j < cols; ++j) ss += r_inv[k * cols + j] * r_inv[k * cols + j];
    fit.standard_errors[k] = std::sqrt(fit.residual_variance * ss);
  }
  return fit;
}

int adf_auto_lags(std::size_t length) {
  return static_cast<int>(
      std::floor(12.0 * std::pow(static_cast<double>(length) / 100.0, 0.25)));
}

AdfResult adf_test(std::span<const double> values, int lags) {
  const std::size_t n = values.size();
  if (lags < 0) lags = adf_auto_lags(n);
  if (n <= static_cast<std::size_t>(lags) + 10)
    throw std::invalid_argument("adf_test: series too short for the lag order");

  const std::size_t first = static_cast<std::size_t>(lags) + 1;  // first usable t
  const std::size_t rows = n - 1 - static_cast<std::size_t>(lags);
  const std::size_t cols = 2 + static_cast<std::size_t>(lags);

  std::vector<double> dy(n - 1);
  for (std::size_t t = 1; t < n; ++t) dy[t - 1] = values[t] - values[t - 1];

  std::vector<double> response(rows);
  std::vector<std::vector<double>> design(cols, std::vector<double>(rows));
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t t = first + i;
    response[i] = dy[t - 1];
    design[0][i] = 1.0;
    design[1][i] = values[t - 1];
    for (int j = 1; j <= lags; ++j)
      design[1 + static_cast<std::size_t>(j)][i] = dy[t - 1 - static_cast<std::size_t>(j)];
  }

  const OlsFit fit = ols(response, design);
  AdfResult result;
  result.lags = lags;
  result.statistic = fit.coefficients[1] / fit.standard_errors[1];
  result.reject_1pct = result.statistic < kAdfCritical1pct;
  result.reject_5pct = result.statistic < kAdfCritical5pct;
  return result;
}

PowerLawFit fit_power_law(std::span<const long> sizes, long s_min) {
  if (s_min < 1) throw std::invalid_argument("fit_power_law: s_min < 1");
  std::vector<long> tail;
  for (long s : sizes) {
    if (s < 1) throw std::invalid_argument("fit_power_law: nonpositive size");
    if (s >= s_min) tail.push_back(s);
  }
  if (tail.size() < 100)
    throw std::invalid_argument("fit_power_law: insufficient tail samples (need >= 100)");

  PowerLawFit fit;
  fit.tail_samples = static_cast<int>(tail.size());

  double log_sum = 0.0;
  long max_size = s_min;
  for (long s : tail) {
    log_sum += std::log(static_cast<double>(s) / (static_cast<double>(s_min) - 0.5));
    max_size = std::max(max_size, s);
  }
  fit.exponent_mle = 1.0 + static_cast<double>(tail.size()) / log_sum;
  fit.decades = std::log10(static_cast<double>(max_size) / static_cast<double>(s_min));

  // Logarithmic bins [s_min * 2^j, s_min * 2^{j+1}); least squares of
  // ln(density) on ln(geometric bin center).
  std::vector<double> log_centers;
  std::vector<double> log_densities;
  double lower = static_cast<double>(s_min);
  while (lower <= static_cast<double>(max_size)) {
    const double upper = lower * 2.0;
    std::size_t count = 0;
    for (long s : tail) {
      const double sd = static_cast<double>(s);
      if (sd >= lower && sd < upper) ++count;
    }
    if (count > 0) {
      const double density =
          static_cast<double>(count) / (static_cast<double>(tail.size()) * (upper - lower));
      log_centers.push_back(std::log(std::sqrt(lower * upper)));
      log_densities.push_back(std::log(density));
    }
    lower = upper;
  }
  if (log_centers.size() < 3)
    throw std::invalid_argument("fit_power_law: insufficient data (need >= 3 nonempty bins)");

  const double cx = mean_of(log_centers);
  const double cy = mean_of(log_densities);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < log_centers.size(); ++i) {
    sxx += (log_centers[i] - cx) * (log_centers[i] - cx);
    sxy += (log_centers[i] - cx) * (log_densities[i] - cy);
  }
  fit.binned_slope = sxy / sxx;
  return fit;
}

double volatility(std::span<const double> returns) {
  if (returns.size() < 2) throw std::invalid_argument("volatility: need at least 2 returns");
  return sample_stdev(returns);
}

long relevant_avalanche_count(std::span<const AvalancheRecord> log, int population,
                              double fraction) {
  if (!(fraction > 0.0)) throw std::invalid_argument("relevant_avalanche_count: fraction <= 0");
  const long threshold =
      static_cast<long>(std::ceil(fraction * static_cast<double>(population)));
  long count = 0;
  for (const AvalancheRecord& record : log)
    if (record.distinct_agents >= threshold) ++count;
  return count;
}

}  // namespace socm::stats

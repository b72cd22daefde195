#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "socm/information.hpp"

namespace socm::stats {

// ADF critical values for the constant-only regression, asymptotic (MacKinnon
// response-surface values for large T).
inline constexpr double kAdfCritical1pct = -3.43;
inline constexpr double kAdfCritical5pct = -2.86;

// An avalanche is "relevant" when it involves at least this fraction of the
// trader population.
inline constexpr double kRelevantFraction = 0.002;

struct ReturnsSeries {
  std::vector<double> values;     // log-returns
  std::size_t source_length = 0;  // length of the price series they came from
};

// r_t = ln(p_{t+1}) - ln(p_t). Requires >= 2 strictly positive prices.
ReturnsSeries log_returns(std::span<const double> prices);

// (r - mean) / sample stdev. Output has sample mean 0 and sample stdev 1.
// Zero variance throws.
ReturnsSeries normalize(const ReturnsSeries& returns);

struct Moments {
  double mean = 0.0;
  double stdev = 0.0;  // sample (n-1)
  double skewness = 0.0;
  double excess_kurtosis = 0.0;  // m4/m2^2 - 3; NaN together with skewness when stdev == 0
};

// Requires length >= 4.
Moments moments(std::span<const double> values);

struct PdfBin {
  double center = 0.0;
  double density = 0.0;
};

// Histogram over symmetric linear bins spanning [-range, range]. Densities are
// normalized against the full sample size, so the covered probability equals
// the fraction of samples inside the range.
std::vector<PdfBin> empirical_pdf(std::span<const double> values, double bin_width,
                                  double range);

// A[1 - (1-q) B x^2]^{1/(1-q)}; the q -> 1 limit is A exp(-B x^2) and a
// nonpositive bracket (q < 1) gives 0.
double q_gaussian(double x, double q, double a, double b);

struct QGaussianFit {
  double q = 0.0;
  double a = 0.0;
  double b = 0.0;
  double objective = 0.0;  // sum of squared log-density residuals
};

// Least-squares fit of log densities over the nonzero bins, by Nelder-Mead
// simplex restarted from a fixed grid of q starts. Bounds q in (1, 3) and
// a, b > 0 by rejection. Needs >= 8 nonzero bins; throws if no restart
// converges.
QGaussianFit fit_q_gaussian(const std::vector<PdfBin>& pdf);

// acf[lag] = sum_t (x_t - mean)(x_{t+lag} - mean) / sum_t (x_t - mean)^2,
// lag = 0..max_lag (acf[0] == 1). Requires max_lag < length/2 and nonzero
// variance.
std::vector<double> acf(std::span<const double> values, int max_lag);

// acf of the absolute values.
std::vector<double> abs_acf(std::span<const double> values, int max_lag);

// Standard normal quantile, |error| < 1e-8: rational approximation polished
// with one Newton step against the erfc-based CDF. p outside (0, 1) throws.
double normal_quantile(double p);

struct QqPoint {
  double theoretical = 0.0;
  double empirical = 0.0;
};

// Sorted sample against normal_quantile((i + 0.5) / n). Requires length >= 10.
std::vector<QqPoint> qq_points(std::span<const double> values);

struct OlsFit {
  std::vector<double> coefficients;
  std::vector<double> standard_errors;
  double residual_variance = 0.0;  // RSS / (rows - cols)
};

// Least squares of y on the given columns via Householder QR. Requires more
// rows than columns and full column rank (throws on collinearity).
OlsFit ols(std::span<const double> y, const std::vector<std::vector<double>>& columns);

struct AdfResult {
  double statistic = 0.0;
  int lags = 0;
  bool reject_1pct = false;
  bool reject_5pct = false;
};

// Number of lagged differences used when none is given: 12 * (T/100)^(1/4),
// floored.
int adf_auto_lags(std::size_t length);

// Augmented Dickey-Fuller test with a constant and no trend:
// dy_t = c + rho * y_{t-1} + sum_j phi_j * dy_{t-j} + e_t. The statistic is
// rho-hat over its standard error, compared against kAdfCritical1pct/5pct.
// lags < 0 selects adf_auto_lags. Requires length > lags + 10.
AdfResult adf_test(std::span<const double> values, int lags = -1);

struct PowerLawFit {
  double exponent_mle = 0.0;   // 1 + n / sum ln(s_i / (s_min - 0.5))
  double binned_slope = 0.0;   // log-log least squares over ratio-2 bins
  int tail_samples = 0;        // samples >= s_min
  double decades = 0.0;        // log10(max tail sample / s_min)
};

// Fits the tail s >= s_min of a positive integer sample. Needs >= 100 tail
// samples and >= 3 nonempty logarithmic bins, otherwise throws.
PowerLawFit fit_power_law(std::span<const long> sizes, long s_min);

// Sample standard deviation of the returns.
double volatility(std::span<const double> returns);

// Avalanches involving at least ceil(fraction * population) distinct traders.
long relevant_avalanche_count(std::span<const AvalancheRecord> log, int population,
                              double fraction = kRelevantFraction);

}  // namespace socm::stats

#include "levysearch/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "levysearch/parallel.hpp"
#include "levysearch/walk.hpp"

namespace levysearch {

namespace cal = calibration;

namespace {

using Counts = std::vector<std::uint64_t>;

// Splits opts.n_samples into fixed chunks, each with its own stream, and
// sums the per-chunk count vectors. body(rng, count, counts) fills counts.
template <class Body>
Counts sample_counts(const SampleOptions& opts, std::uint64_t salt, std::size_t width, Body&& body) {
  const std::uint64_t chunk = std::max<std::uint64_t>(1, opts.chunk);
  const std::uint64_t n_chunks = (opts.n_samples + chunk - 1) / chunk;
  std::vector<Counts> partial(n_chunks, Counts(width, 0));
  parallel_for(n_chunks, opts.workers, [&](std::size_t c) {
    Rng rng = Rng::stream(opts.master_seed, c, salt);
    const std::uint64_t begin = c * chunk;
    const std::uint64_t count = std::min(chunk, opts.n_samples - begin);
    body(rng, count, partial[c]);
  });
  Counts total(width, 0);
  for (const Counts& p : partial) {
    for (std::size_t i = 0; i < width; ++i) total[i] += p[i];
  }
  return total;
}

double binomial_se(double p, double n) { return std::sqrt(std::max(p * (1.0 - p), 0.0) / n); }

// One-sided upper tail of the standard normal.
double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

WalkSpec cauchy_plane(double ell_max) { return WalkSpec::levy(2.0, ell_max); }

void require_m_grid(const std::vector<std::int64_t>& m_grid, std::int64_t lowest, double ell_max) {
  if (m_grid.empty()) throw std::domain_error("probe grid is empty");
  for (std::int64_t m : m_grid) {
    if (m < lowest || static_cast<double>(m) > cal::kAlpha * ell_max) {
      throw std::domain_error(fmt::format("probe m={} outside [{}, alpha*ell_max={}]", m, lowest,
                                          cal::kAlpha * ell_max));
    }
  }
}

}  // namespace

std::vector<RadialHistogram> radial_pdf(const WalkSpec& spec, const std::vector<std::int64_t>& m_values,
                                        const std::vector<double>& bin_widths, std::size_t n_bins,
                                        const SampleOptions& opts) {
  if (!spec.has_monotone_density()) {
    throw UnsupportedKind("radial_pdf needs a non-increasing step density; two_scales is excluded");
  }
  if (m_values.empty() || m_values.size() != bin_widths.size() || n_bins == 0) {
    throw std::invalid_argument("radial_pdf needs one bin width per step count and n_bins > 0");
  }
  for (std::int64_t m : m_values) {
    if (m < 1) throw std::domain_error("radial_pdf needs m >= 1");
  }
  const std::int64_t m_max = *std::max_element(m_values.begin(), m_values.end());
  const std::size_t stride = n_bins + 1;
  const StepSampler sampler(spec);

  const Counts counts = sample_counts(
      opts, 0x72616469616cULL, stride * m_values.size(), [&](Rng& rng, std::uint64_t count, Counts& acc) {
        for (std::uint64_t s = 0; s < count; ++s) {
          PlaneWalkState state;
          for (std::int64_t step_no = 1; step_no <= m_max; ++step_no) {
            step(state, sampler, rng);
            for (std::size_t k = 0; k < m_values.size(); ++k) {
              if (m_values[k] != step_no) continue;
              const double r = state.position.norm();
              const auto bin = static_cast<std::size_t>(r / bin_widths[k]);
              acc[k * stride + std::min(bin, n_bins)] += 1;
            }
          }
        }
      });

  std::vector<RadialHistogram> out;
  const double n = static_cast<double>(opts.n_samples);
  for (std::size_t k = 0; k < m_values.size(); ++k) {
    RadialHistogram h;
    h.m = m_values[k];
    h.bin_width = bin_widths[k];
    h.n_samples = opts.n_samples;
    h.counts.assign(counts.begin() + static_cast<std::ptrdiff_t>(k * stride),
                    counts.begin() + static_cast<std::ptrdiff_t>(k * stride + n_bins));
    h.overflow = counts[k * stride + n_bins];
    for (std::size_t i = 0; i < n_bins; ++i) {
      const double area = std::numbers::pi * (h.outer(i) * h.outer(i) - h.inner(i) * h.inner(i));
      const double c = static_cast<double>(h.counts[i]);
      h.density.push_back(c / (n * area));
      h.density_stderr.push_back(std::sqrt(c) / (n * area));
    }
    out.push_back(std::move(h));
  }
  return out;
}

RadialHistogram radial_pdf(const WalkSpec& spec, std::int64_t m, double bin_width, std::size_t n_bins,
                           const SampleOptions& opts) {
  return radial_pdf(spec, std::vector<std::int64_t>{m}, std::vector<double>{bin_width}, n_bins, opts).front();
}

BoundCheck check_radial_monotone(const RadialHistogram& hist) {
  BoundCheck check;
  check.name = fmt::format("radial_monotone_m{}", hist.m);
  check.criterion = "adjacent-bin density increases beyond 3 sigma within the false-alarm budget";
  check.calibration["sigma"] = cal::kSigma;
  check.calibration["bin_width"] = hist.bin_width;

  std::size_t comparisons = 0;
  std::size_t violations = 0;
  for (std::size_t i = 0; i + 1 < hist.density.size(); ++i) {
    if (hist.counts[i] == 0 && hist.counts[i + 1] == 0) continue;
    ++comparisons;
    const double rise = hist.density[i + 1] - hist.density[i];
    const double noise = std::hypot(hist.density_stderr[i], hist.density_stderr[i + 1]);
    if (rise > cal::kSigma * noise) {
      ++violations;
      check.probes.push_back({fmt::format("rise@r={}", hist.inner(i + 1)), hist.inner(i + 1), rise,
                              noise, cal::kSigma * noise, false});
    }
  }
  const double expected = static_cast<double>(comparisons) * normal_upper_tail(cal::kSigma);
  const double allowed = std::max(1.0, std::ceil(expected + 3.0 * std::sqrt(expected)));
  check.summary["comparisons"] = static_cast<double>(comparisons);
  check.summary["violations"] = static_cast<double>(violations);
  check.summary["expected_false_alarms"] = expected;
  check.summary["allowed_violations"] = allowed;
  check.passed = static_cast<double>(violations) <= allowed;
  return check;
}

BoundCheck check_pdf_ceiling(const RadialHistogram& hist) {
  BoundCheck check;
  check.name = fmt::format("pdf_ceiling_m{}", hist.m);
  check.criterion = "annulus density <= 1/(pi r_inner^2) + 3 sigma for r_inner >= 1";
  check.calibration["sigma"] = cal::kSigma;
  check.calibration["bin_width"] = hist.bin_width;
  check.passed = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < hist.density.size(); ++i) {
    const double r = hist.inner(i);
    if (r < 1.0) continue;
    const double ceiling = 1.0 / (std::numbers::pi * r * r);
    worst = std::max(worst, hist.density[i] / ceiling);
    if (hist.density[i] - cal::kSigma * hist.density_stderr[i] > ceiling) {
      check.passed = false;
      check.probes.push_back({fmt::format("r={}", r), r, hist.density[i], hist.density_stderr[i],
                              ceiling, false});
    }
  }
  check.summary["max_density_over_ceiling"] = worst;
  return check;
}

BoundCheck check_lemma_lb(const std::vector<std::int64_t>& m_grid, const SampleOptions& opts,
                          double ell_max) {
  require_m_grid(m_grid, 1, ell_max);
  const WalkSpec spec = cauchy_plane(ell_max);
  const StepSampler sampler(spec);
  std::vector<std::int64_t> ms = m_grid;
  if (std::find(ms.begin(), ms.end(), 1) == ms.end()) ms.insert(ms.begin(), 1);
  const std::int64_t m_max = *std::max_element(ms.begin(), ms.end());

  const Counts hits = sample_counts(opts, 0x6c625f6c656d6dULL, ms.size(), [&](Rng& rng, std::uint64_t count,
                                                                             Counts& acc) {
    for (std::uint64_t s = 0; s < count; ++s) {
      PlaneWalkState state;
      for (std::int64_t step_no = 1; step_no <= m_max; ++step_no) {
        step(state, sampler, rng);
        for (std::size_t k = 0; k < ms.size(); ++k) {
          if (ms[k] != step_no) continue;
          const double r = state.position.norm();
          const double m = static_cast<double>(step_no);
          if (r >= m && r <= cal::kLbOuter * m) acc[k] += 1;
        }
      }
    }
  });

  BoundCheck check;
  check.name = "lemma_lb";
  check.criterion = fmt::format("P(|Z(m)| in [m, {} m]) >= {} on the grid; m=1 matches a(1 - 1/{}) within 3 se",
                                cal::kLbOuter, cal::kLbFloor, cal::kLbOuter);
  check.calibration["c_prime"] = cal::kLbOuter;
  check.calibration["floor"] = cal::kLbFloor;
  check.calibration["alpha"] = cal::kAlpha;
  check.calibration["ell_max"] = ell_max;
  check.passed = true;

  const double n = static_cast<double>(opts.n_samples);
  const double a = normalization(spec);
  const double anchor = a * (1.0 - 1.0 / cal::kLbOuter);
  double q_min = 1.0;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const double q = static_cast<double>(hits[k]) / n;
    const double se = binomial_se(q, n);
    const bool on_grid = std::find(m_grid.begin(), m_grid.end(), ms[k]) != m_grid.end();
    if (on_grid) {
      Probe p{fmt::format("q(m={})", ms[k]), static_cast<double>(ms[k]), q, se, cal::kLbFloor,
              q >= cal::kLbFloor};
      q_min = std::min(q_min, q);
      check.passed = check.passed && p.passed;
      check.probes.push_back(p);
    }
    if (ms[k] == 1) {
      Probe p{"anchor(m=1)", 1.0, q, se, anchor, std::abs(q - anchor) <= cal::kSigma * se};
      check.summary["anchor_closed_form"] = anchor;
      check.passed = check.passed && p.passed;
      check.probes.push_back(p);
    }
  }
  check.summary["q_min"] = q_min;
  return check;
}

BoundCheck check_lemma_ub(const std::vector<std::int64_t>& m_grid, const SampleOptions& opts,
                          double ell_max) {
  require_m_grid(m_grid, 2, ell_max);
  const WalkSpec spec = cauchy_plane(ell_max);
  const StepSampler sampler(spec);
  constexpr std::size_t kRungs = 10;  // rho = 1, 2, ..., 512
  const std::int64_t m_max = *std::max_element(m_grid.begin(), m_grid.end());
  const std::int64_t m_first = *std::min_element(m_grid.begin(), m_grid.end());
  // Off-origin probes at the first grid point.
  const std::vector<Vec2> offsets = {{2.0, 0.0}, {-1.2, 1.6}, {0.0, -4.0}, {2.4, 3.2}};
  const std::size_t width = m_grid.size() * kRungs + 1 + offsets.size();

  const Counts hits = sample_counts(opts, 0x75625f6c656d6dULL, width, [&](Rng& rng, std::uint64_t count,
                                                                         Counts& acc) {
    for (std::uint64_t s = 0; s < count; ++s) {
      PlaneWalkState state;
      for (std::int64_t step_no = 1; step_no <= m_max; ++step_no) {
        step(state, sampler, rng);
        for (std::size_t k = 0; k < m_grid.size(); ++k) {
          if (m_grid[k] != step_no) continue;
          const double r = state.position.norm();
          double rho = 1.0;
          for (std::size_t j = 0; j < kRungs; ++j, rho *= 2.0) {
            if (r <= rho) acc[k * kRungs + j] += 1;
          }
        }
        if (step_no == m_first) {
          const std::size_t base = m_grid.size() * kRungs;
          if (state.position.norm2() <= 1.0) acc[base] += 1;
          for (std::size_t j = 0; j < offsets.size(); ++j) {
            if ((state.position - offsets[j]).norm2() <= 1.0) acc[base + 1 + j] += 1;
          }
        }
      }
    }
  });

  BoundCheck check;
  check.name = "lemma_ub";
  check.criterion = fmt::format("log-log slope of s(m) <= {} and max s(m) <= {}", cal::kUbMaxSlope,
                                cal::kUbCeiling);
  check.calibration["max_slope"] = cal::kUbMaxSlope;
  check.calibration["ceiling"] = cal::kUbCeiling;
  check.calibration["min_hits"] = cal::kUbMinHits;
  check.calibration["ell_max"] = ell_max;
  check.calibration["alpha"] = cal::kAlpha;

  const double n = static_cast<double>(opts.n_samples);
  std::vector<double> xs;
  std::vector<double> ss;
  double s_max = 0.0;
  for (std::size_t k = 0; k < m_grid.size(); ++k) {
    const double m = static_cast<double>(m_grid[k]);
    const double rho_cap = std::max(1.0, m / cal::kUbRadiusFraction);
    std::size_t rung = 0;
    double rho = 1.0;
    while (static_cast<double>(hits[k * kRungs + rung]) < cal::kUbMinHits && rung + 1 < kRungs &&
           2.0 * rho <= rho_cap) {
      ++rung;
      rho *= 2.0;
    }
    const double count = static_cast<double>(hits[k * kRungs + rung]);
    if (rung > 0) {
      check.notes.push_back(fmt::format("m={}: widened probe radius to rho={} ({} hits at rho=1)",
                                        m_grid[k], rho, hits[k * kRungs]));
    }
    if (count < cal::kUbMinHits) {
      check.notes.push_back(fmt::format("m={}: only {} hits at rho={}; estimate is noisy", m_grid[k],
                                        count, rho));
    }
    const double p = count / n;
    const double scale = m * m / (std::log(m) * std::log(m)) / (rho * rho);
    const double s = p * scale;
    const double se = binomial_se(p, n) * scale;
    check.probes.push_back({fmt::format("s(m={}, rho={})", m_grid[k], rho), m, s, se, cal::kUbCeiling,
                            s <= cal::kUbCeiling});
    s_max = std::max(s_max, s);
    if (s > 0.0) {
      xs.push_back(m);
      ss.push_back(s);
    }
  }

  bool offset_ok = true;
  const std::size_t base = m_grid.size() * kRungs;
  const double p0 = static_cast<double>(hits[base]) / n;
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    const double px = static_cast<double>(hits[base + 1 + j]) / n;
    const double noise = std::hypot(binomial_se(px, n), binomial_se(p0, n));
    const double limit = p0 * (1.0 + cal::kUbOffsetTolerance) + cal::kSigma * noise;
    const bool ok = px <= limit;
    offset_ok = offset_ok && ok;
    check.probes.push_back({fmt::format("offset(|x|={})", offsets[j].norm()), offsets[j].norm(), px,
                            binomial_se(px, n), limit, ok});
  }

  double slope = 0.0;
  if (xs.size() >= 2) {
    const LinearFit fit = log_log_fit(xs, ss);
    slope = fit.slope;
    check.summary["fit_r2"] = fit.r2;
  }
  if (xs.size() < 5) {
    check.notes.push_back("fewer than 5 usable probe points for the trend fit");
  }
  check.summary["slope"] = slope;
  check.summary["s_max"] = s_max;
  check.summary["p_origin_first_m"] = p0;
  check.passed = xs.size() >= 2 && slope <= cal::kUbMaxSlope && s_max <= cal::kUbCeiling && offset_ok;
  return check;
}

BoundCheck check_lemma_consistency(const BoundCheck& lb, const BoundCheck& ub) {
  BoundCheck check;
  check.name = "lemma_lb_ub_consistency";
  check.criterion = "mean density on [m, c' m] implied by the lower bound <= upper-bound ceiling density";
  check.calibration["c_prime"] = cal::kLbOuter;
  check.calibration["ceiling"] = cal::kUbCeiling;
  check.passed = true;
  const double annulus_factor = std::numbers::pi * (cal::kLbOuter * cal::kLbOuter - 1.0);
  for (const Probe& p : lb.probes) {
    if (p.label.rfind("q(", 0) != 0 || p.x < 2.0) continue;
    const double m = p.x;
    const double lb_density = p.statistic / (annulus_factor * m * m);
    const double ub_density = cal::kUbCeiling * std::log(m) * std::log(m) / (std::numbers::pi * m * m);
    const bool ok = lb_density <= ub_density;
    check.passed = check.passed && ok;
    check.probes.push_back({fmt::format("m={}", m), m, lb_density, 0.0, ub_density, ok});
  }
  if (!ub.passed) check.notes.push_back("upper-bound check itself did not pass");
  return check;
}

BoundCheck check_distance_claims(const WalkSpec& spec, const std::vector<double>& d_grid, std::int64_t m,
                                 const std::vector<std::int64_t>& m_grid, const SampleOptions& opts) {
  const double ell_max = spec.max_length();
  for (double d : d_grid) {
    if (!(d >= 1.0 && d <= ell_max / 3.0)) {
      throw std::domain_error(fmt::format("distance d={} outside [1, ell_max/3={}]", d, ell_max / 3.0));
    }
  }
  if (m < 2) throw std::domain_error("check_distance_claims needs m >= 2");
  for (std::int64_t mm : m_grid) {
    if (mm < 2) throw std::domain_error("confinement grid needs m >= 2");
  }
  const StepSampler sampler(spec);
  std::vector<double> whp_d;
  for (std::int64_t mm : m_grid) {
    const double x = static_cast<double>(mm);
    whp_d.push_back(std::max(1.0, cal::kFarCoefficient * x / std::log(x)));
  }
  std::int64_t m_max = m;
  for (std::int64_t mm : m_grid) m_max = std::max(m_max, mm);

  // Layout: [d_grid escapes at m][whp escapes per m_grid][near counts per (m', s)]
  std::vector<std::size_t> near_offset;
  std::size_t width = d_grid.size() + m_grid.size();
  for (std::int64_t mm : m_grid) {
    near_offset.push_back(width);
    width += static_cast<std::size_t>(mm);
  }

  const Counts hits = sample_counts(opts, 0x64697374616e6365ULL, width, [&](Rng& rng, std::uint64_t count,
                                                                          Counts& acc) {
    for (std::uint64_t s = 0; s < count; ++s) {
      PlaneWalkState state;
      double reach = 0.0;
      for (std::int64_t step_no = 1; step_no <= m_max; ++step_no) {
        step(state, sampler, rng);
        const double r = state.position.norm();
        reach = std::max(reach, r);
        if (step_no == m) {
          for (std::size_t k = 0; k < d_grid.size(); ++k) {
            if (reach >= d_grid[k]) acc[k] += 1;
          }
        }
        for (std::size_t k = 0; k < m_grid.size(); ++k) {
          const std::int64_t mm = m_grid[k];
          if (step_no > mm) continue;
          if (r <= cal::kNearFactor * static_cast<double>(mm)) {
            acc[near_offset[k] + static_cast<std::size_t>(step_no - 1)] += 1;
          }
          if (step_no == mm && reach >= whp_d[k]) acc[d_grid.size() + k] += 1;
        }
      }
    }
  });

  BoundCheck check;
  check.name = "distance_claims";
  check.criterion =
      "escape P(max_{s<=m}|Z(s)| >= d) >= 1 - exp(-a m / (6 d)); escape to c'' m/ln m w.p. >= 1 - 10/m^2; "
      "P(|Z(s)| <= c m) >= delta for s <= m";
  check.calibration["c_far"] = cal::kFarCoefficient;
  check.calibration["far_deficit"] = cal::kFarDeficit;
  check.calibration["c_near"] = cal::kNearFactor;
  check.calibration["delta"] = cal::kNearDelta;
  check.passed = true;

  const double n = static_cast<double>(opts.n_samples);
  const double a = spec.kind() == WalkKind::levy ? normalization(spec) : 1.0;
  const double c_proof = a / 6.0;
  check.calibration["c_escape_proof"] = c_proof;
  double c_fit = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < d_grid.size(); ++k) {
    const double p = static_cast<double>(hits[k]) / n;
    const double se = binomial_se(p, n);
    const double bound = 1.0 - std::exp(-c_proof * static_cast<double>(m) / d_grid[k]);
    const bool ok = p + cal::kSigma * se >= bound;
    check.passed = check.passed && ok;
    check.probes.push_back({fmt::format("escape(d={}, m={})", d_grid[k], m), d_grid[k], p, se, bound, ok});
    if (p < 1.0) c_fit = std::min(c_fit, -std::log1p(-p) * d_grid[k] / static_cast<double>(m));
  }
  if (std::isfinite(c_fit)) check.summary["c_escape_fit"] = c_fit;

  for (std::size_t k = 0; k < m_grid.size(); ++k) {
    const double x = static_cast<double>(m_grid[k]);
    const double p = static_cast<double>(hits[d_grid.size() + k]) / n;
    const double bound = 1.0 - cal::kFarDeficit / (x * x);
    const bool ok = p >= bound;
    check.passed = check.passed && ok;
    check.probes.push_back({fmt::format("escape_whp(m={}, d={})", m_grid[k], whp_d[k]), x, p,
                            binomial_se(p, n), bound, ok});
  }

  for (std::size_t k = 0; k < m_grid.size(); ++k) {
    const auto mm = static_cast<std::size_t>(m_grid[k]);
    double worst = 1.0;
    for (std::size_t s = 0; s < mm; ++s) {
      worst = std::min(worst, static_cast<double>(hits[near_offset[k] + s]) / n);
    }
    const bool ok = worst >= cal::kNearDelta;
    check.passed = check.passed && ok;
    check.probes.push_back({fmt::format("near(m={})", m_grid[k]), static_cast<double>(mm), worst,
                            binomial_se(worst, n), cal::kNearDelta, ok});
  }
  return check;
}

BoundCheck check_projection(double mu, double ell_max, const SampleOptions& opts, double ell_max_small) {
  if (!(ell_max >= 1.0e3)) {
    throw std::domain_error("check_projection needs ell_max >= 1e3 for a usable fit window");
  }
  if (ell_max_small <= 0.0) ell_max_small = ell_max / 10.0;
  const WalkSpec spec = WalkSpec::levy(mu, ell_max);
  const WalkSpec small = WalkSpec::levy(mu, ell_max_small);

  constexpr std::size_t kBins = 16;
  const double lo = cal::kProjectionFitLow;
  const double hi = ell_max / 2.0;
  const double log_step = std::log(hi / lo) / static_cast<double>(kBins);

  BoundCheck check;
  check.name = fmt::format("projection_mu{}", mu);
  check.criterion = fmt::format("tail exponent of |V1| on [{}, ell_max/2] within {} of mu; variance growth "
                                "matches its order; mean(V1) within 3 se of 0",
                                lo, cal::kProjectionTolerance);
  check.calibration["tolerance"] = cal::kProjectionTolerance;
  check.calibration["fit_low"] = lo;
  check.calibration["fit_high"] = hi;
  check.calibration["bins"] = static_cast<double>(kBins);

  // Per-chunk partial sums are merged in chunk order, so results do not
  // depend on the worker count.
  struct Moments {
    double sum = 0.0;
    double sum2 = 0.0;
    double sum4 = 0.0;
  };
  auto run = [&](const WalkSpec& law, const SampleOptions& o, std::uint64_t salt, Counts* hist,
                 Moments& mom) {
    const StepSampler sampler(law);
    const std::uint64_t chunk = std::max<std::uint64_t>(1, o.chunk);
    const std::uint64_t n_chunks = (o.n_samples + chunk - 1) / chunk;
    std::vector<Counts> partial(hist ? n_chunks : 0, Counts(kBins, 0));
    std::vector<Moments> moms(n_chunks);
    parallel_for(n_chunks, o.workers, [&](std::size_t c) {
      Rng rng = Rng::stream(o.master_seed, c, salt);
      const std::uint64_t count = std::min(chunk, o.n_samples - c * chunk);
      for (std::uint64_t s = 0; s < count; ++s) {
        const double len = sampler(rng);
        const double v1 = len * std::cos(rng.angle());
        const double v2 = v1 * v1;
        moms[c].sum += v1;
        moms[c].sum2 += v2;
        moms[c].sum4 += v2 * v2;
        if (!hist) continue;
        const double a = std::abs(v1);
        if (a >= lo && a < hi) {
          const auto bin = static_cast<std::size_t>(std::log(a / lo) / log_step);
          partial[c][std::min(bin, kBins - 1)] += 1;
        }
      }
    });
    for (std::size_t c = 0; c < n_chunks; ++c) {
      mom.sum += moms[c].sum;
      mom.sum2 += moms[c].sum2;
      mom.sum4 += moms[c].sum4;
      if (hist) {
        for (std::size_t i = 0; i < kBins; ++i) (*hist)[i] += partial[c][i];
      }
    }
  };

  SampleOptions o = opts;
  Counts hist(kBins, 0);
  Moments tail;
  for (int attempt = 0;; ++attempt) {
    std::fill(hist.begin(), hist.end(), 0);
    tail = Moments{};
    run(spec, o, 0x70726f6aULL, &hist, tail);
    const auto thinnest = *std::min_element(hist.begin(), hist.end());
    if (thinnest >= 10 || attempt >= 3) {
      if (thinnest < 10) check.notes.push_back("tail bins remain sparse after widening");
      break;
    }
    check.notes.push_back(fmt::format("sparse tail bin ({} counts); doubling samples to {}", thinnest,
                                      2 * o.n_samples));
    o.n_samples *= 2;
  }
  const double n = static_cast<double>(o.n_samples);

  std::vector<double> centers;
  std::vector<double> densities;
  for (std::size_t i = 0; i < kBins; ++i) {
    if (hist[i] == 0) continue;
    const double left = lo * std::exp(log_step * static_cast<double>(i));
    const double right = lo * std::exp(log_step * static_cast<double>(i + 1));
    centers.push_back(std::sqrt(left * right));
    densities.push_back(static_cast<double>(hist[i]) / (n * (right - left)));
  }
  const LinearFit fit = log_log_fit(centers, densities);
  const double exponent = -fit.slope;
  const bool exponent_ok = std::abs(exponent - mu) <= cal::kProjectionTolerance;
  check.probes.push_back({"tail_exponent", mu, exponent, 0.0, cal::kProjectionTolerance, exponent_ok});
  check.summary["tail_exponent"] = exponent;
  check.summary["fit_r2"] = fit.r2;
  check.summary["samples"] = n;

  const double mean = tail.sum / n;
  const double se_mean = std::sqrt((tail.sum2 / n - mean * mean) / n);
  const bool symmetric = std::abs(mean) <= cal::kSigma * se_mean;
  check.probes.push_back({"mean_v1", 0.0, mean, se_mean, cal::kSigma * se_mean, symmetric});

  // Second moments of V1 at the two cutoffs. The fourth moment grows like
  // ell_max^{5-mu}, so the sample count doubles until the ratio is resolved.
  const bool log_order = std::abs(mu - 3.0) < 1e-9;
  const double expected = log_order ? std::log(ell_max) / std::log(ell_max_small)
                                    : std::pow(ell_max / ell_max_small, 3.0 - mu);
  const double target_se = log_order ? 0.05 : 0.1 * expected;
  SampleOptions ov = opts;
  double ratio = 0.0;
  double ratio_se = 0.0;
  for (int attempt = 0;; ++attempt) {
    Moments big;
    Moments little;
    run(spec, ov, 0x7661722dULL, nullptr, big);
    run(small, ov, 0x7661722eULL, nullptr, little);
    const double nv = static_cast<double>(ov.n_samples);
    const double m2b = big.sum2 / nv;
    const double m2s = little.sum2 / nv;
    const double rel_b = std::sqrt(std::max(big.sum4 / nv - m2b * m2b, 0.0) / nv) / m2b;
    const double rel_s = std::sqrt(std::max(little.sum4 / nv - m2s * m2s, 0.0) / nv) / m2s;
    ratio = m2b / m2s;
    ratio_se = ratio * std::hypot(rel_b, rel_s);
    if (ratio_se <= target_se || attempt >= 8) {
      if (ratio_se > target_se) check.notes.push_back("variance ratio still noisy after widening");
      break;
    }
    check.notes.push_back(fmt::format("variance ratio se {:.3g}; doubling samples to {}", ratio_se,
                                      2 * ov.n_samples));
    ov.n_samples *= 2;
  }
  const bool variance_ok = log_order ? std::abs(ratio - expected) <= 0.3
                                     : ratio >= 0.5 * expected && ratio <= 2.0 * expected;
  check.probes.push_back({"variance_ratio", ell_max / ell_max_small, ratio, ratio_se, expected, variance_ok});
  check.summary["variance_ratio"] = ratio;
  check.summary["variance_samples"] = static_cast<double>(ov.n_samples);
  check.summary["variance_ratio_order"] = expected;
  // E[V1^2] = E[l^2]/2 exactly.
  check.summary["variance_ratio_exact"] = analytics(spec).second_moment / analytics(small).second_moment;

  check.passed = exponent_ok && symmetric && variance_ok;
  return check;
}

SpecFamily scaling_family(const std::string& name) {
  if (name == "cauchy") {
    return [](double n) { return WalkSpec::torus_levy(2.0, n); };
  }
  if (name.rfind("levy:", 0) == 0) {
    const double mu = std::stod(name.substr(5));
    WalkSpec::levy(mu, 2.0);  // validate eagerly
    return [mu](double n) { return WalkSpec::torus_levy(mu, n); };
  }
  if (name == "fixed_quarter") {
    return [](double n) { return WalkSpec::fixed(std::pow(n, 0.25)); };
  }
  if (name == "two_scales_tuned") {
    return [](double n) {
      const double L = std::pow(n, 3.0 / 8.0);
      return WalkSpec::two_scales(L, std::pow(L, -2.0 / 3.0));
    };
  }
  throw std::invalid_argument(fmt::format("unknown scaling family '{}'", name));
}

BoundCheck check_lower_bound_scaling(const std::string& name, const SpecFamily& family, double threshold,
                                     bool at_least, const ScalingOptions& opts) {
  BoundCheck check;
  check.name = fmt::format("scaling_{}", name);
  check.criterion = fmt::format("slope of ln phi(n) vs ln n {} {}", at_least ? ">=" : "<=", threshold);
  check.calibration["threshold"] = threshold;
  check.calibration["n_trials"] = static_cast<double>(opts.trials.n_trials);

  std::vector<double> ns;
  std::vector<double> phis;
  for (double n : opts.n_grid) {
    const WalkSpec spec = family(n);
    const SensitivityReport rep = scale_sensitivity(spec, n, default_D_grid(n), opts.trials, opts.shapes);
    const SensitivityRow& row = rep.per_D[rep.argmax];
    const Estimate& worst = row.ensemble.worst_time();
    const double se = ratio_to_opt(worst.std_error, row.D, n);
    bool censored_dominated = false;
    for (const auto& r : rep.per_D) {
      for (const auto& s : r.ensemble.per_shape) {
        censored_dominated = censored_dominated || s.result.time.lower_bound_only();
      }
    }
    check.probes.push_back({fmt::format("phi(n={}, argmax D={})", n, row.D), n, rep.phi, se, 0.0, true});
    if (censored_dominated) {
      check.notes.push_back(fmt::format("n={} excluded: some cells censored above 1%", n));
      check.probes.back().passed = false;
      continue;
    }
    ns.push_back(n);
    phis.push_back(rep.phi);
  }
  if (ns.size() < 2) {
    check.notes.push_back("fewer than two usable grid points");
    check.passed = false;
    return check;
  }
  const LinearFit fit = log_log_fit(ns, phis);
  check.summary["slope"] = fit.slope;
  check.summary["fit_r2"] = fit.r2;
  check.passed = at_least ? fit.slope >= threshold : fit.slope <= threshold;
  return check;
}

Estimate estimate_time_to_distance(const WalkSpec& spec, double d, const SampleOptions& opts) {
  if (!(d > 0.0)) throw std::domain_error("distance must be positive");
  const StepSampler sampler(spec);
  const std::uint64_t chunk = std::max<std::uint64_t>(1, opts.chunk);
  const std::uint64_t n_chunks = (opts.n_samples + chunk - 1) / chunk;
  std::vector<double> times(opts.n_samples);
  parallel_for(n_chunks, opts.workers, [&](std::size_t c) {
    Rng rng = Rng::stream(opts.master_seed, c, 0x54445fULL);
    const std::uint64_t begin = c * chunk;
    const std::uint64_t count = std::min(chunk, opts.n_samples - begin);
    for (std::uint64_t s = 0; s < count; ++s) {
      PlaneWalkState state;
      while (state.position.norm2() < d * d) step(state, sampler, rng);
      times[begin + s] = state.elapsed;
    }
  });
  return summarize(times);
}

}  // namespace levysearch

// Copyright 2026 The tunnel_wkb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Independent numerical oracles and the acceptance criteria built on them.
// The oracles here use their own quadrature (composite Gauss-Legendre with
// graded substitutions) or brute-force sums, never the closed forms they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tunnel_wkb/tunnel_wkb.hpp"

namespace tunnel_wkb::validation {

namespace oracle {

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
        }
        const double dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) {
          x[i] = z;
          w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
          break;
        }
      }
    }
  }
};

/// Composite 20-point Gauss-Legendre with `panels` equal panels.
template <class Fn>
double composite_gl(Fn&& f, double a, double b, int panels) {
  static const GaussLegendre gl(20);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (std::size_t i = 0; i < gl.x.size(); ++i) sum += gl.w[i] * f(lo + 0.5 * h * (gl.x[i] + 1.0));
  }
  return 0.5 * h * sum;
}

/// Term-by-term 2F1 series, summed until |term| < 1e-16 (|x| < 1).
inline double hyp2f1_series(double a, double b, double c, double x) {
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 1'000'000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    sum += term;
    if (std::abs(term) < 1e-16 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

/// Euler integral of F1 split at t = 1/2, with t = u^m on the left and
/// 1 - t = w^m on the right. The endpoint weights become u^(ma-1) and
/// w^(m(c-a)-1); m is chosen so both exponents are at least 15, smooth
/// enough for high-order Gauss-Legendre panels.
/// 2F1(a', b; c; x) is the b2 = 0 special case with the roles a <-> b.
inline double appell_f1_direct(double a, double b1, double b2, double c, double y1, double y2,
                               int panels = 32) {
  const double ca = c - a;
  const double m = std::max(8.0, std::ceil(16.0 / std::min(a, ca)));
  auto tail = [&](double t) {
    return std::pow(1.0 - y1 * t, -b1) * std::pow(1.0 - y2 * t, -b2);
  };
  auto left = [&](double u) {
    const double t = std::pow(u, m);
    return m * std::pow(u, m * a - 1.0) * std::pow(1.0 - t, ca - 1.0) * tail(t);
  };
  auto right = [&](double w) {
    const double r = std::pow(w, m);
    return m * std::pow(w, m * ca - 1.0) * std::pow(1.0 - r, a - 1.0) * tail(1.0 - r);
  };
  const double edge = std::pow(0.5, 1.0 / m);
  const double integral = composite_gl(left, 0.0, edge, panels) + composite_gl(right, 0.0, edge, panels);
  return std::exp(std::lgamma(c) - std::lgamma(a) - std::lgamma(ca)) * integral;
}

/// 2F1(a, b; c; x) from its Euler integral (requires c > b > 0).
inline double hyp2f1_integral(double a, double b, double c, double x, int panels = 32) {
  return appell_f1_direct(b, a, 0.0, c, x, 0.0, panels);
}

/// A^2 integral_0^{x_inner} dx / (2 p0) with x = x_inner - u^2 and a
/// cancellation-free radicand near the turning point.
inline double normalization_closure(const PotentialSpec& spec, const BoundState& st) {
  const double xi = st.x_inner;
  auto f = [&](double u) {
    const double r = -u * u / xi;  // x / x_inner - 1
    double radicand;
    if (spec.kind == PotentialKind::PowerLaw) {
      radicand = -st.E * std::expm1(-spec.s * std::log1p(r));  // x^-s - |E|
    } else {
      radicand = -spec.V0 * std::log1p(r);  // E - V0 ln(x/a)
    }
    return 2.0 * u / (2.0 * std::sqrt(2.0 * radicand));
  };
  quadrature::Options qo;
  qo.rel_tol = 1e-13;
  qo.max_levels = 16;
  return st.A_sq * quadrature::tanh_sinh(f, 0.0, std::sqrt(xi), qo).value;
}

/// Half-period average (1/pi) integral_{-pi/2}^{pi/2} exp(-K / cos(phi)) dphi,
/// K = 2 (2|E|)^(3/2) / (3F).
inline double ac_average_numeric(double E, double F) {
  const double K = 2.0 * std::pow(2.0 * std::abs(E), 1.5) / (3.0 * F);
  auto f = [K](double phi) { return std::exp(-K / std::cos(phi)); };
  quadrature::Options qo;
  qo.rel_tol = 1e-12;
  return 2.0 / std::numbers::pi * quadrature::tanh_sinh(f, 0.0, 0.5 * std::numbers::pi, qo).value;
}

}  // namespace oracle

struct Outcome {
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string name;
  std::vector<std::string> tags;
  std::function<Outcome(double tol_scale)> run;
};

namespace detail {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

inline Outcome bound(double measured, double threshold, std::string detail = {}) {
  return {measured <= threshold, measured, threshold, std::move(detail)};
}

}  // namespace detail

inline std::vector<Criterion> criteria() {
  using detail::rel;
  std::vector<Criterion> list;

  list.push_back({1, "f(2) = pi/2 - 1 to absolute 1e-9", {"general_s", "figure"}, [](double k) {
                    return detail::bound(std::abs(f_of_s(2.0) - (std::numbers::pi / 2.0 - 1.0)),
                                         1e-9 * k);
                  }});

  list.push_back({2, "Coulomb exact action equals quadrature oracle to rel 1e-8", {"coulomb"},
                  [](double k) {
                    double worst = 0.0;
                    const double E = -0.5;
                    for (double eps : {1e-4, 1e-3, 1e-2, 0.04, 0.1}) {
                      const double F = eps * E * E;
                      const double exact = action_coulomb_exact(eps, E).value;
                      const double orc = action_oracle(PotentialSpec::power_law(1.0), E, F).value;
                      worst = std::max(worst, rel(exact, orc));
                    }
                    return detail::bound(worst, 1e-8 * k);
                  }});

  list.push_back({3, "Transposition invariance of the Coulomb and inverse-sqrt closed forms",
                  {"coulomb", "invsqrt"}, [](double k) {
                    double worst = 0.0;
                    for (double eps : {1e-4, 1e-3, 1e-2, 0.04, 0.1}) {
                      worst = std::max(
                          worst, rel(action_coulomb_exact(eps, -0.5, ClosedForm::Original).value,
                                     action_coulomb_exact(eps, -0.5, ClosedForm::NearUnity).value));
                    }
                    for (double eps : {1e-3, 1e-2}) {
                      const double F = eps * 0.125;
                      worst = std::max(
                          worst, rel(action_invsqrt_exact(eps, F, ClosedForm::Original).value,
                                     action_invsqrt_exact(eps, F, ClosedForm::NearUnity).value));
                    }
                    return detail::bound(worst, 1e-10 * k);
                  }});

  list.push_back({4, "Coulomb asymptotic remainder is O(eps): decade error ratio in [5, 20]",
                  {"coulomb", "asymptotic"}, [](double) {
                    double lo = 1e300, hi = 0.0;
                    std::ostringstream os;
                    for (double eps : {0.1, 0.04, 1e-2, 1e-3}) {
                      auto err = [](double e) {
                        return std::abs(action_coulomb_exact(e, -0.5).value -
                                        action_coulomb_asymptotic(e, 1).value);
                      };
                      const double ratio = err(eps) / err(eps / 10.0);
                      os << "eps=" << eps << ":" << ratio << " ";
                      lo = std::min(lo, ratio);
                      hi = std::max(hi, ratio);
                    }
                    Outcome o{lo >= 5.0 && hi <= 20.0, hi, 20.0, os.str()};
                    return o;
                  }});

  list.push_back({5, "Inverse-sqrt exact action (Appell F1) equals oracle to rel 1e-7", {"invsqrt"},
                  [](double k) {
                    double worst = 0.0;
                    for (double eps : {1e-4, 1e-3, 1e-2}) {
                      const double F = eps * 0.125;
                      worst = std::max(worst,
                                       rel(action_invsqrt_exact(eps, F).value,
                                           action_oracle(PotentialSpec::power_law(0.5), -0.5, F).value));
                    }
                    return detail::bound(worst, 1e-7 * k);
                  }});

  list.push_back({6, "Inverse-sqrt three-term remainder stays within 3x of its eps=1e-2 value",
                  {"invsqrt", "asymptotic"}, [](double) {
                    auto scaled = [](double eps) {
                      const double F = eps * 0.125;
                      const double diff = std::abs(action_invsqrt_exact(eps, F).value -
                                                   action_invsqrt_asymptotic(eps, F, 3).value);
                      return diff * std::sqrt(F) / (4.0 * std::numbers::sqrt2 * eps);
                    };
                    const double ref = scaled(1e-2);
                    double worst = 1.0;
                    std::ostringstream os;
                    for (double eps : detail::log_space(1e-2, 1e-4, 5)) {
                      const double r = scaled(eps);
                      os << "eps=" << eps << ":" << r << " ";
                      worst = std::max({worst, r / ref, ref / r});
                    }
                    return detail::bound(worst, 3.0, os.str());
                  }});

  list.push_back({7, "Improved logarithmic action is closer to the oracle than the leading one",
                  {"log", "figure"}, [](double) {
                    double worst = 0.0;  // max over eps of |I78 - I0| / |I70 - I0|
                    const double V0 = 1.0, a = 1.0, F = 0.01;
                    for (double eps : detail::log_space(1e-3, 0.05, 10)) {
                      const double E = V0 * std::log(eps * V0 / (a * F));
                      const double i0 = action_oracle(PotentialSpec::logarithmic(V0, a), E, F).value;
                      const double i78 = action_log_improved_from_epsilon(V0, eps, F).value;
                      const double i70 = action_log_leading_from_epsilon(V0, eps, F).value;
                      worst = std::max(worst, std::abs(i78 - i0) / std::abs(i70 - i0));
                    }
                    return Outcome{worst < 1.0, worst, 1.0, "max |I78-I0|/|I70-I0|"};
                  }});

  list.push_back({8, "Quantized energies reproduce the closed-form spectra to rel 1e-8",
                  {"spectra"}, [](double k) {
                    double worst = 0.0;
                    const PotentialSpec specs[] = {PotentialSpec::power_law(1.0),
                                                   PotentialSpec::power_law(0.5),
                                                   PotentialSpec::logarithmic(1.0, 1.0)};
                    for (const auto& sp : specs) {
                      for (int n = 1; n <= 5; ++n) {
                        worst = std::max(worst, rel(energy_quantize(sp, n, *default_maslov(sp)),
                                                    energy_closed(sp, n)));
                      }
                    }
                    return detail::bound(worst, 1e-8 * k);
                  }});

  list.push_back({9, "Normalization closure and specialization of the general A^2", {"spectra"},
                  [](double k) {
                    double worst_pl = 0.0, worst_log = 0.0, worst_spec = 0.0;
                    for (double s : {0.5, 1.0}) {
                      const auto sp = PotentialSpec::power_law(s);
                      for (int n = 1; n <= 3; ++n) {
                        const auto st = bound_state(sp, n);
                        worst_pl = std::max(worst_pl, std::abs(oracle::normalization_closure(sp, st) - 1.0));
                        const double aE = -st.E;
                        const double special =
                            s == 1.0 ? 2.0 / (std::numbers::pi * n * n * n)
                                     : 8.0 * std::numbers::sqrt2 / (3.0 * std::numbers::pi) * std::pow(aE, 2.5);
                        worst_spec = std::max(worst_spec, rel(st.A_sq, special));
                      }
                    }
                    const auto sp15 = PotentialSpec::power_law(1.5);
                    for (double E : {-0.25, -0.5, -1.0}) {
                      const auto st = bound_state_from_energy(sp15, E);
                      worst_pl = std::max(worst_pl, std::abs(oracle::normalization_closure(sp15, st) - 1.0));
                    }
                    const auto sl = PotentialSpec::logarithmic(1.0, 1.0);
                    for (int n = 1; n <= 3; ++n) {
                      const auto st = bound_state(sl, n);
                      worst_log = std::max(worst_log, std::abs(oracle::normalization_closure(sl, st) - 1.0));
                    }
                    std::ostringstream os;
                    os << "power-law " << worst_pl << " (<= " << 1e-8 * k << "), log " << worst_log
                       << " (<= " << 1e-2 * k << "), specialization " << worst_spec << " (<= "
                       << 1e-12 * k << ")";
                    const bool ok = worst_pl <= 1e-8 * k && worst_log <= 1e-2 * k && worst_spec <= 1e-12 * k;
                    return Outcome{ok, worst_pl, 1e-8 * k, os.str()};
                  }});

  list.push_back({10, "Low-frequency averaging factor matches the numerical cycle average within 5%",
                  {"ac"}, [](double k) {
                    double worst = 0.0;
                    const std::pair<double, double> cases[] = {{0.5, 0.02}, {0.5, 0.01}, {1.0, 0.05}, {0.125, 0.002}};
                    for (auto [ae, F] : cases) {
                      const double E = -ae;
                      const double K = -penetrability_exponent(E, F);
                      if (K < 30.0) continue;
                      const double predicted = ac_average_factor(E, F).value * std::exp(-K);
                      worst = std::max(worst, rel(predicted, oracle::ac_average_numeric(E, F)));
                    }
                    return detail::bound(worst, 0.05 * k);
                  }});

  list.push_back({11, "Turning-point residuals <= 1e-12 and closed-form vs bisection agreement 1e-10",
                  {"roots"}, [](double k) {
                    double worst_res = 0.0, worst_agree = 0.0;
                    auto residual = [&](double value, double z) {
                      worst_res = std::max(worst_res, std::abs(value) / std::max(1.0, std::abs(z)));
                    };
                    for (double eps : detail::log_space(1e-4, 0.05, 12)) {
                      // Coulomb, E = -1/2.
                      const double Ec = -0.5;
                      const RootSet c = coulomb_roots(eps, Ec);
                      for (double z : c.roots) residual(z - 1.0 - eps * z * z, z);
                      const RootSet cg = generic_turning_points(PotentialSpec::power_law(1.0), Ec, eps * Ec * Ec);
                      worst_agree = std::max({worst_agree, rel(cg.x_left, c.x_left), rel(cg.x_right, c.x_right)});
                      // Inverse square root, E = -1/2.
                      const double Ei = -0.5;
                      const RootSet q = cubic_roots_cardano(eps, Ei);
                      for (double z : q.roots) residual(z - 1.0 - eps * z * z * z, z * z * z * eps + 1.0);
                      const RootSet qg = generic_turning_points(PotentialSpec::power_law(0.5), Ei, eps * 0.125);
                      worst_agree = std::max({worst_agree, rel(qg.x_left, q.x_left), rel(qg.x_right, q.x_right)});
                      // Logarithmic, V0 = a = 1, F = 0.01.
                      const double F = 0.01;
                      const RootSet l = log_turning_points(eps, 1.0, F);
                      for (double z : l.roots) residual(z - eps * std::exp(z), z);
                      const RootSet lg = generic_turning_points(PotentialSpec::logarithmic(1.0, 1.0),
                                                                std::log(eps / F), F);
                      worst_agree = std::max({worst_agree, rel(lg.x_left, l.x_left), rel(lg.x_right, l.x_right)});
                    }
                    std::ostringstream os;
                    os << "residual " << worst_res << " (<= " << 1e-12 * k << "), agreement " << worst_agree
                       << " (<= " << 1e-10 * k << ")";
                    return Outcome{worst_res <= 1e-12 * k && worst_agree <= 1e-10 * k, worst_agree,
                                   1e-10 * k, os.str()};
                  }});

  list.push_back({12, "exp(Coulomb asymptotic action) reproduces the closed-form rate factor",
                  {"coulomb", "asymptotic"}, [](double k) {
                    double worst = 0.0;
                    const std::pair<int, double> cases[] = {{1, 0.01}, {2, 0.001}};
                    for (auto [n, F] : cases) {
                      const double n4 = std::pow(n, 4);
                      const double eps = 4.0 * n4 * F;
                      const double lhs = std::exp(action_coulomb_asymptotic(eps, n).value);
                      const double rhs = std::pow(4.0 / (n4 * F), 2.0 * n) *
                                         std::exp(-2.0 / (3.0 * std::pow(n, 3) * F) + 2.0 * n);
                      worst = std::max(worst, rel(lhs, rhs));
                    }
                    return detail::bound(worst, 1e-10 * k);
                  }});

  return list;
}

struct Report {
  const Criterion* criterion = nullptr;
  Outcome outcome;
};

/// Runs every criterion carrying the tag or id `only` (all when empty),
/// on up to `threads` workers. Reports keep criterion order.
inline std::vector<Report> run(const std::vector<Criterion>& list, const std::string& only = {},
                               double tol_scale = 1.0, unsigned threads = 1) {
  std::vector<const Criterion*> selected;
  for (const auto& c : list) {
    const bool match = only.empty() || std::find(c.tags.begin(), c.tags.end(), only) != c.tags.end() ||
                       std::to_string(c.id) == only;
    if (match) selected.push_back(&c);
  }
  std::vector<Report> out(selected.size());
  auto work = [&](std::size_t i) {
    out[i].criterion = selected[i];
    try {
      out[i].outcome = selected[i]->run(tol_scale);
    } catch (const std::exception& e) {
      out[i].outcome = {false, std::nan(""), 0.0, std::string("exception: ") + e.what()};
    }
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < selected.size(); i += threads) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

inline std::string format_line(const Report& r) {
  std::ostringstream os;
  os << (r.outcome.passed ? "PASS" : "FAIL") << "  [" << r.criterion->id << "] " << r.criterion->name
     << "  measured=" << r.outcome.measured << " threshold=" << r.outcome.threshold;
  if (!r.outcome.detail.empty()) os << "  (" << r.outcome.detail << ")";
  return os.str();
}

}  // namespace tunnel_wkb::validation

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "upsilon/errors.hpp"

namespace upsilon {

/// Declared endpoint behavior of an integrand.
///
/// At a finite endpoint the integrand is ~ (distance to endpoint)^exponent
/// with exponent > -1; the integrator removes the singularity with the power
/// substitution s = a + u^{1/(1+exponent)} (mirrored at the upper end).
///
/// For an integral over [a, +inf) a hint with endpoint == upper declares
/// algebraic decay instead: integrand ~ s^exponent as s -> inf, which needs
/// exponent < -1. Tails that decay faster than any power need no hint.
struct SingularityHint {
    enum class Endpoint { lower, upper };
    Endpoint endpoint = Endpoint::lower;
    double exponent = 0.0;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    std::int64_t evaluations = 0;
};

/// Absolute tolerance used when none is passed. Overridable through the
/// UPSILON_QUAD_TOL environment variable (read once per process).
inline double default_tolerance() {
    static const double tol = [] {
        if (const char* s = std::getenv("UPSILON_QUAD_TOL")) {
            char* end = nullptr;
            const double v = std::strtod(s, &end);
            if (end != s && v > 0.0 && std::isfinite(v)) return v;
        }
        return 1e-9;
    }();
    return tol;
}

inline constexpr std::int64_t kDefaultEvalBudget = 1'000'000;

/// Cumulative integrand evaluations on this thread; identities snapshots it
/// to report per-cell budgets.
inline std::int64_t& quad_evaluation_counter() {
    thread_local std::int64_t counter = 0;
    return counter;
}

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK dqk15 constants).
inline constexpr double kGk15Nodes[8] = {
    0.99145537112081263920685469752633,
    0.94910791234275852452618968404785,
    0.86486442335976907278971278864093,
    0.74153118559939443986386477328079,
    0.58608723546769113029414483825873,
    0.40584515137739716690660641207696,
    0.20778495500789846760068940377324,
    0.0,
};
inline constexpr double kGk15KronrodW[8] = {
    0.02293532201052922496373200805897,
    0.06309209262997855329070066318921,
    0.10479001032225018383987632254152,
    0.14065325971552591874518959051024,
    0.16900472663926790282658342659855,
    0.19035057806478540991325640242101,
    0.20443294007529889241416199923465,
    0.20948214108472782801299917489171,
};
inline constexpr double kGk15GaussW[4] = {
    0.12948496616886969327061143267908,
    0.27970539148927666790146777142378,
    0.38183005050511894495036977548898,
    0.41795918367346938775510204081633,
};

struct PanelEstimate {
    double value = 0.0;
    double error = 0.0;
};

template <class F>
PanelEstimate gk15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGk15Nodes[i];
        fv[i] = f(center - dx);
        fv[14 - i] = f(center + dx);
    }
    fv[7] = f(center);
    quad_evaluation_counter() += 15;

    double resk = 0.0, resg = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double pair = fv[i] + fv[14 - i];
        resk += kGk15KronrodW[i] * pair;
        resabs += kGk15KronrodW[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    }
    resk += kGk15KronrodW[7] * fv[7];
    resabs += kGk15KronrodW[7] * std::abs(fv[7]);
    // Gauss nodes are the odd-index Kronrod nodes.
    resg = kGk15GaussW[3] * fv[7];
    for (int i = 0; i < 3; ++i) {
        resg += kGk15GaussW[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    }

    const double mean = resk * 0.5;
    double resasc = kGk15KronrodW[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i) {
        resasc += kGk15KronrodW[i] *
                  (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    }

    const double value = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    if (!std::isfinite(value)) {
        throw NonConvergence("integrand produced a non-finite value in [" +
                                 std::to_string(a) + ", " + std::to_string(b) + "]",
                             value, std::numeric_limits<double>::infinity());
    }
    return {value, err};
}

struct Panel {
    double a, b;
    double value, err;
    bool refinable = true;
};

// Globally adaptive bisection over a set of seed intervals of a single
// transformed integrand. Deterministic: refinement order depends only on the
// computed estimates, ties broken by interval position.
template <class F>
QuadResult adapt(F& f, const std::vector<std::pair<double, double>>& seeds,
                 double tol, std::int64_t budget) {
    std::vector<Panel> panels;
    panels.reserve(64);

    const std::int64_t start_evals = quad_evaluation_counter();
    auto evals_used = [&] { return quad_evaluation_counter() - start_evals; };

    for (auto [a, b] : seeds) {
        if (!(b > a)) continue;
        // Asymmetric first split so features symmetric about the midpoint do
        // not fool the error estimate.
        const double m = a + (b - a) * (13.0 / 21.0);
        auto e1 = gk15(f, a, m);
        auto e2 = gk15(f, m, b);
        panels.push_back({a, m, e1.value, e1.error});
        panels.push_back({m, b, e2.value, e2.error});
    }
    if (panels.empty()) return {0.0, 0.0, 0};

    auto worse = [&](std::size_t i, std::size_t j) {
        if (panels[i].err != panels[j].err) return panels[i].err < panels[j].err;
        return panels[i].a > panels[j].a;  // deterministic tie-break
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)>
        heap(worse);

    double total_err = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        total_err += panels[i].err;
        heap.push(i);
    }

    const double eps = std::numeric_limits<double>::epsilon();
    while (total_err > tol && !heap.empty() && evals_used() + 30 <= budget) {
        const std::size_t idx = heap.top();
        heap.pop();
        Panel& p = panels[idx];
        if (!p.refinable) continue;
        const double width = p.b - p.a;
        if (width <= 4.0 * eps * (std::abs(p.a) + std::abs(p.b)) ||
            width <= std::numeric_limits<double>::min() * 4.0) {
            p.refinable = false;  // cannot be split further; its error stays
            continue;
        }
        const double m = 0.5 * (p.a + p.b);
        auto e1 = gk15(f, p.a, m);
        auto e2 = gk15(f, m, p.b);
        total_err -= p.err;
        total_err += e1.error + e2.error;
        const double old_b = p.b;
        p.b = m;
        p.value = e1.value;
        p.err = e1.error;
        panels.push_back({m, old_b, e2.value, e2.error});
        heap.push(idx);
        heap.push(panels.size() - 1);
    }

    // Deterministic, stable summation: accumulate in interval order.
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double value = 0.0;
    double err = 0.0;
    for (const Panel& p : panels) {
        value += p.value;
        err += p.err;
    }

    QuadResult result{value, err, evals_used()};
    if (err > tol) {
        throw NonConvergence("quadrature did not reach tol=" + std::to_string(tol) +
                                 " within the evaluation budget (error estimate " +
                                 std::to_string(err) + ")",
                             value, err);
    }
    return result;
}

} // namespace detail

/// Adaptive quadrature of f over [lower, upper]; upper may be +infinity.
///
/// Endpoint singularities named in `hints` are removed exactly by power
/// substitutions before the adaptive pass. Semi-infinite ranges are split at
/// a finite cut and the tail mapped to a bounded interval; an upper hint
/// (declared algebraic decay) selects a flattening map for power-law tails.
///
/// Throws DivergentHint when a declared exponent implies divergence, and
/// NonConvergence when the error estimate still exceeds tol after the
/// evaluation budget.
template <class F>
QuadResult integrate(F&& f, double lower, double upper,
                     const std::vector<SingularityHint>& hints = {},
                     double tol = default_tolerance(),
                     std::int64_t budget = kDefaultEvalBudget) {
    if (!(tol > 0.0)) throw ParamError("integrate: tol must be > 0");
    if (!std::isfinite(lower)) throw DomainError("integrate: lower bound must be finite");
    const bool infinite = std::isinf(upper);
    if (!infinite && !(upper > lower)) {
        if (upper == lower) return {0.0, 0.0, 0};
        throw DomainError("integrate: upper < lower");
    }

    bool has_lo = false, has_up = false;
    double e_lo = 0.0, e_up = 0.0;
    for (const auto& h : hints) {
        if (h.endpoint == SingularityHint::Endpoint::lower) {
            has_lo = true;
            e_lo = h.exponent;
        } else {
            has_up = true;
            e_up = h.exponent;
        }
    }
    if (has_lo && e_lo <= -1.0) {
        throw DivergentHint("lower endpoint exponent " + std::to_string(e_lo) +
                            " <= -1 implies a divergent integral");
    }
    if (has_up && !infinite && e_up <= -1.0) {
        throw DivergentHint("upper endpoint exponent " + std::to_string(e_up) +
                            " <= -1 implies a divergent integral");
    }
    if (has_up && infinite && e_up >= -1.0) {
        throw DivergentHint("declared tail decay exponent " + std::to_string(e_up) +
                            " >= -1 implies a divergent integral on [a, inf)");
    }

    // Transformed integrands are collected as (callable, interval) pieces and
    // handed to one shared adaptive pass.
    struct Piece {
        std::function<double(double)> g;
        double a, b;
    };
    std::vector<Piece> pieces;

    auto add_plain = [&](double a, double b) {
        if (b > a) pieces.push_back({[&f](double s) { return f(s); }, a, b});
    };
    // s = a + u^kappa flattens (s-a)^e exactly: the transformed integrand has
    // a finite nonzero limit at u = 0.
    auto add_lower_sub = [&](double a, double b, double e) {
        if (!(b > a)) return;
        if (e >= 0.0) {
            add_plain(a, b);
            return;
        }
        const double kappa = 1.0 / (1.0 + e);
        const double len = std::pow(b - a, 1.0 + e);
        pieces.push_back({[&f, a, kappa](double u) {
                              const double s = a + std::pow(u, kappa);
                              return f(s) * kappa * std::pow(u, kappa - 1.0);
                          },
                          0.0, len});
    };
    auto add_upper_sub = [&](double a, double b, double e) {
        if (!(b > a)) return;
        if (e >= 0.0) {
            add_plain(a, b);
            return;
        }
        const double kappa = 1.0 / (1.0 + e);
        const double len = std::pow(b - a, 1.0 + e);
        pieces.push_back({[&f, b, kappa](double u) {
                              const double s = b - std::pow(u, kappa);
                              return f(s) * kappa * std::pow(u, kappa - 1.0);
                          },
                          0.0, len});
    };
    auto add_finite = [&](double a, double b) {
        if (has_lo && has_up) {
            const double m = 0.5 * (a + b);
            add_lower_sub(a, m, e_lo);
            add_upper_sub(m, b, e_up);
        } else if (has_lo) {
            add_lower_sub(a, b, e_lo);
        } else if (has_up) {
            add_upper_sub(a, b, e_up);
        } else {
            add_plain(a, b);
        }
    };

    if (!infinite) {
        add_finite(lower, upper);
    } else {
        // Finite head (carrying any lower hint), then a mapped tail.
        double cut;
        if (lower < 1.0) {
            cut = 1.0;
            if (has_lo) {
                add_lower_sub(lower, cut, e_lo);
            } else {
                add_plain(lower, cut);
            }
        } else if (has_lo) {
            cut = 2.0 * lower;
            add_lower_sub(lower, cut, e_lo);
        } else {
            cut = lower;
        }
        if (has_up) {
            // Declared decay s^e_up: s = cut * w^{-gamma} flattens the mapped
            // integrand to a finite limit at w = 0.
            const double gamma = -1.0 / (e_up + 1.0);
            pieces.push_back({[&f, cut, gamma](double w) {
                                  const double s = cut * std::pow(w, -gamma);
                                  if (!std::isfinite(s)) return 0.0;
                                  return f(s) * cut * gamma * std::pow(w, -gamma - 1.0);
                              },
                              0.0, 1.0});
        } else {
            // s = cut/(1-t); assumes super-algebraic decay.
            pieces.push_back({[&f, cut](double t) {
                                  const double om = 1.0 - t;
                                  const double s = cut / om;
                                  if (!std::isfinite(s)) return 0.0;
                                  return f(s) * cut / (om * om);
                              },
                              0.0, 1.0});
        }
    }

    // One adaptive pass per piece with a shared tolerance split; pieces are
    // few (at most 3) and independent.
    const double piece_tol = tol / static_cast<double>(std::max<std::size_t>(pieces.size(), 1));
    QuadResult total{0.0, 0.0, 0};
    for (const Piece& p : pieces) {
        auto g = [&p](double u) { return p.g(u); };
        QuadResult r = detail::adapt(g, {{p.a, p.b}}, piece_tol,
                                     budget - total.evaluations);
        total.value += r.value;
        total.error_estimate += r.error_estimate;
        total.evaluations += r.evaluations;
    }
    if (total.evaluations == 0) total.evaluations = 1;
    return total;
}

} // namespace upsilon

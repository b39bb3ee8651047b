#pragma once

// Low-segment line fits and the big-M gadgets that turn products, absolute
// values, max(1, |.|), disjunctive DC flow and convection selection into
// linear rows of a ModelIR.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "model_ir.hpp"

namespace gridxpand {

/// Half-width of the angle-difference domain covered by the trig fits (rad).
inline constexpr double kAngleDomain = 0.6;

/// y = slope * x + intercept on [lo, hi], with errors certified on a dense grid.
struct Segment {
    double slope = 0.0;
    double intercept = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double max_abs_err = 0.0;
    double max_rel_err = 0.0;   // pointwise |f - L| / |f|
    double edge_rel_err = 0.0;  // |f - L| / |L| at the domain ends

    double operator()(double x) const { return slope * x + intercept; }
};

using ScalarFn = std::function<double(double)>;

inline constexpr int kCertifyPoints = 20001;

/// Fills the error fields of `seg` against f on a uniform grid over its domain.
inline Segment certify(const ScalarFn& f, Segment seg, int points = kCertifyPoints) {
    if (!(seg.lo < seg.hi)) throw ModelError("segment domain is empty");
    if (points < 2) points = 2;
    seg.max_abs_err = seg.max_rel_err = seg.edge_rel_err = 0.0;
    for (int i = 0; i < points; ++i) {
        const double x = seg.lo + (seg.hi - seg.lo) * i / (points - 1);
        const double fx = f(x), lx = seg(x);
        const double err = std::abs(fx - lx);
        seg.max_abs_err = std::max(seg.max_abs_err, err);
        if (std::abs(fx) > 1e-12) seg.max_rel_err = std::max(seg.max_rel_err, err / std::abs(fx));
    }
    for (double x : {seg.lo, seg.hi}) {
        const double lx = seg(x);
        if (std::abs(lx) > 1e-12) seg.edge_rel_err = std::max(seg.edge_rel_err, std::abs(f(x) - lx) / std::abs(lx));
    }
    return seg;
}

namespace detail {

/// Points of [lo, hi] where the deviation f(x) - s x can be extremal: the two ends
/// and the roots of f'(x) = s, bracketed on a grid and refined by bisection.
inline std::vector<double> extremum_candidates(const ScalarFn& df, double s, double lo, double hi,
                                               int scan = 2000) {
    std::vector<double> xs{lo, hi};
    double xa = lo, ga = df(lo) - s;
    for (int i = 1; i <= scan; ++i) {
        const double xb = lo + (hi - lo) * i / scan;
        const double gb = df(xb) - s;
        if (gb == 0.0) {
            xs.push_back(xb);
        } else if ((ga < 0.0) != (gb < 0.0) && ga != 0.0) {
            double a = xa, b = xb, fa = ga;
            for (int k = 0; k < 80 && b - a > 1e-15 * (1.0 + std::abs(a)); ++k) {
                const double mid = 0.5 * (a + b);
                const double fm = df(mid) - s;
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            xs.push_back(0.5 * (a + b));
        }
        xa = xb;
        ga = gb;
    }
    return xs;
}

struct SlopeScore {
    double intercept;
    double error;
};

inline SlopeScore score_slope(const ScalarFn& f, const ScalarFn& df, double s, double lo, double hi,
                              std::optional<double> pinned) {
    double emin = std::numeric_limits<double>::infinity();
    double emax = -emin;
    for (double x : extremum_candidates(df, s, lo, hi)) {
        const double e = f(x) - s * x;
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    }
    if (pinned) return {*pinned, std::max(std::abs(emax - *pinned), std::abs(emin - *pinned))};
    return {0.5 * (emax + emin), 0.5 * (emax - emin)};
}

}  // namespace detail

/// Minimax line through f on [lo, hi]. For each trial slope the deviation f - s x is
/// extremal at an end or where f' = s; the best intercept centres those extremes
/// (or is held at `pinned_intercept`). The slope is grid-searched and refined twice.
inline Segment fit_line_minmax(const ScalarFn& f, const ScalarFn& df, double lo, double hi,
                               std::optional<double> pinned_intercept = std::nullopt) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ModelError("fit_line_minmax: degenerate domain");
    double smin = (f(hi) - f(lo)) / (hi - lo), smax = smin;
    for (int i = 0; i <= 200; ++i) {
        const double d = df(lo + (hi - lo) * i / 200.0);
        smin = std::min(smin, d);
        smax = std::max(smax, d);
    }
    if (pinned_intercept) {
        for (double x : {lo, hi})
            if (x != 0.0) {
                const double through = (f(x) - *pinned_intercept) / x;
                smin = std::min(smin, through);
                smax = std::max(smax, through);
            }
    }
    const double pad = 0.25 * (smax - smin) + 1e-9;
    smin -= pad;
    smax += pad;

    constexpr int kGrid = 201;
    double best_s = smin;
    detail::SlopeScore best{0.0, std::numeric_limits<double>::infinity()};
    for (int level = 0; level < 3; ++level) {
        const double step = (smax - smin) / (kGrid - 1);
        for (int i = 0; i < kGrid; ++i) {
            const double s = smin + step * i;
            const auto sc = detail::score_slope(f, df, s, lo, hi, pinned_intercept);
            if (sc.error < best.error) {
                best = sc;
                best_s = s;
            }
        }
        smin = best_s - 2.0 * step;
        smax = best_s + 2.0 * step;
    }
    Segment seg{best_s, best.intercept, lo, hi};
    return certify(f, seg);
}

/// Two cosine pieces split at 0 and one sine line on the angle domain.
struct TrigFit {
    Segment cos_neg;  // on [-0.6, 0]
    Segment cos_pos;  // on [0, 0.6]
    Segment sin;      // on [-0.6, 0.6]

    /// Worst edge-relative error of the cosine pair.
    double cos_edge_rel_err() const { return std::max(cos_neg.edge_rel_err, cos_pos.edge_rel_err); }
    double cos_max_rel_err() const { return std::max(cos_neg.max_rel_err, cos_pos.max_rel_err); }
    double cos_max_abs_err() const { return std::max(cos_neg.max_abs_err, cos_pos.max_abs_err); }

    double cos_approx(double x) const { return x < 0.0 ? cos_neg(x) : cos_pos(x); }
};

/// The published two-decimal trig coefficients, certified on the angle domain.
/// cos ~ 1 + 0.24 x for x <= 0 and 1 - 0.24 x for x >= 0; sin ~ 0.95 x.
inline TrigFit trig_segments() {
    const ScalarFn c = [](double x) { return std::cos(x); };
    const ScalarFn s = [](double x) { return std::sin(x); };
    TrigFit t;
    t.cos_neg = certify(c, Segment{0.24, 1.0, -kAngleDomain, 0.0});
    t.cos_pos = certify(c, Segment{-0.24, 1.0, 0.0, kAngleDomain});
    t.sin = certify(s, Segment{0.95, 0.0, -kAngleDomain, kAngleDomain});
    return t;
}

/// The same shape refitted with fit_line_minmax (cos intercept held at 1).
inline TrigFit trig_segments_refit() {
    const ScalarFn c = [](double x) { return std::cos(x); };
    const ScalarFn dc = [](double x) { return -std::sin(x); };
    const ScalarFn s = [](double x) { return std::sin(x); };
    const ScalarFn ds = [](double x) { return std::cos(x); };
    TrigFit t;
    t.cos_neg = fit_line_minmax(c, dc, -kAngleDomain, 0.0, 1.0);
    t.cos_pos = fit_line_minmax(c, dc, 0.0, kAngleDomain, 1.0);
    t.sin = fit_line_minmax(s, ds, -kAngleDomain, kAngleDomain, 0.0);
    return t;
}

// ---------------------------------------------------------------------------
// Gadgets. Each appends variables and rows to a ModelIR and never edits what
// is already there; big-M constants are logged with the operand they bound.

struct GadgetFragment {
    std::vector<VarId> vars;
    std::vector<std::size_t> rows;
    std::vector<std::size_t> big_m;
    LinearExpr output;
};

namespace detail {

class FragmentBuilder {
public:
    FragmentBuilder(ModelIR& ir, std::string prefix) : ir_(ir), prefix_(std::move(prefix)) {}

    VarId cont(const std::string& name, double lo, double hi) {
        auto v = ir_.add_continuous(prefix_ + "." + name, lo, hi);
        frag.vars.push_back(v);
        return v;
    }
    VarId bin(const std::string& name) {
        auto v = ir_.add_binary(prefix_ + "." + name);
        frag.vars.push_back(v);
        return v;
    }
    void row(const std::string& name, const LinearExpr& e, Sense s, double rhs) {
        frag.rows.push_back(ir_.add_row(prefix_ + "." + name, e, s, rhs));
    }
    void big_m(const std::string& name, double value, const std::string& why, LinearExpr operand) {
        frag.big_m.push_back(ir_.log_big_m(prefix_ + "." + name, value, why, std::move(operand)));
    }
    void absorb(const GadgetFragment& sub) {
        frag.vars.insert(frag.vars.end(), sub.vars.begin(), sub.vars.end());
        frag.rows.insert(frag.rows.end(), sub.rows.begin(), sub.rows.end());
        frag.big_m.insert(frag.big_m.end(), sub.big_m.begin(), sub.big_m.end());
    }
    ModelIR& ir() { return ir_; }
    const std::string& prefix() const { return prefix_; }

    GadgetFragment frag;

private:
    ModelIR& ir_;
    std::string prefix_;
};

inline double var_abs_bound(const ModelIR& ir, VarId v) {
    const auto& var = ir.var(v);
    const double b = std::max(std::abs(var.lower), std::abs(var.upper));
    if (!std::isfinite(b)) throw ModelError("variable '" + var.name + "' needs finite bounds for a big-M gadget");
    return b;
}

}  // namespace detail

/// theta = y * delta for binary y and |delta| <= delta_bound <= X1.
inline GadgetFragment gadget_bin_cont_product(ModelIR& ir, const std::string& prefix, VarId y,
                                              const LinearExpr& delta, double delta_bound, double X1) {
    if (ir.var(y).kind != VarKind::binary) throw ModelError(prefix + ": product selector must be binary");
    if (!std::isfinite(delta_bound) || !std::isfinite(X1)) throw ModelError(prefix + ": product bound must be finite");
    if (X1 < delta_bound) throw ModelError(prefix + ": X1 is below the operand bound");
    detail::FragmentBuilder b(ir, prefix);
    const VarId theta = b.cont("theta", -delta_bound, delta_bound);
    b.big_m("X1", X1, "operand bound", delta);
    b.row("lo_y", LinearExpr(theta) + LinearExpr(y, X1), Sense::ge, 0.0);
    b.row("hi_y", LinearExpr(theta) + LinearExpr(y, -X1), Sense::le, 0.0);
    b.row("lo_d", LinearExpr(theta) - delta + LinearExpr(y, -X1), Sense::ge, -X1);
    b.row("hi_d", LinearExpr(theta) - delta + LinearExpr(y, X1), Sense::le, X1);
    b.frag.output = LinearExpr(theta);
    return std::move(b.frag);
}

inline GadgetFragment gadget_bin_cont_product(ModelIR& ir, const std::string& prefix, VarId y, VarId delta,
                                              std::optional<double> X1 = std::nullopt) {
    const double bound = detail::var_abs_bound(ir, delta);
    auto frag = gadget_bin_cont_product(ir, prefix, y, LinearExpr(delta), bound, X1.value_or(bound));
    // A sign-definite operand keeps the product on the same side of zero.
    const auto& dv = ir.var(delta);
    const VarId theta = frag.vars.front();
    ir.set_bounds(theta, std::min(0.0, dv.lower), std::max(0.0, dv.upper));
    return frag;
}

/// Output equals max(1, |delta|). Four binaries select the clamp and the sign branch;
/// every binary-times-continuous product goes through gadget_bin_cont_product.
inline GadgetFragment gadget_max1abs(ModelIR& ir, const std::string& prefix, VarId delta) {
    const double bound = detail::var_abs_bound(ir, delta);
    const double X1 = std::max(1.0, bound);
    detail::FragmentBuilder b(ir, prefix);
    const VarId clamp = b.bin("v1");   // |delta| <= 1
    const VarId neg = b.bin("v2");     // delta <= 0
    const VarId pos = b.bin("v3");     // delta >= 0
    const VarId beyond = b.bin("v4");  // |delta| >= 1

    auto neg_part = gadget_bin_cont_product(ir, prefix + ".neg", neg, LinearExpr(delta), bound, X1);
    auto pos_part = gadget_bin_cont_product(ir, prefix + ".pos", pos, LinearExpr(delta), bound, X1);
    b.absorb(neg_part);
    b.absorb(pos_part);
    b.row("pos_sign", pos_part.output, Sense::ge, 0.0);
    b.row("neg_sign", neg_part.output, Sense::le, 0.0);

    const VarId mag = b.cont("abs", 0.0, bound);
    b.row("abs_def", LinearExpr(mag) - pos_part.output + neg_part.output, Sense::eq, 0.0);

    auto beyond_mag = gadget_bin_cont_product(ir, prefix + ".beyond", beyond, LinearExpr(mag), bound, X1);
    auto clamp_mag = gadget_bin_cont_product(ir, prefix + ".clamp", clamp, LinearExpr(mag), bound, X1);
    b.absorb(beyond_mag);
    b.absorb(clamp_mag);
    b.row("beyond_ge", beyond_mag.output - LinearExpr(beyond), Sense::ge, 0.0);
    b.row("clamp_le", clamp_mag.output - LinearExpr(clamp), Sense::le, 0.0);
    b.row("sign_pick", LinearExpr(neg) + LinearExpr(pos), Sense::eq, 1.0);
    b.row("clamp_pick", LinearExpr(clamp) + LinearExpr(beyond), Sense::eq, 1.0);

    const VarId out = b.cont("out", 1.0, std::max(1.0, bound));
    b.row("out_def", LinearExpr(out) - LinearExpr(clamp) - beyond_mag.output, Sense::eq, 0.0);
    b.frag.output = LinearExpr(out);
    return std::move(b.frag);
}

/// Disjunctive DC flow for a line with build decision u:
///   -u pf_max <= pf <= u pf_max,  |pf / beta - (a_s - a_r)| <= (1 - u) X.
/// X must cover the angle-difference span allowed by the bus-angle bounds.
inline GadgetFragment gadget_dc_flow(ModelIR& ir, const std::string& prefix, VarId u, VarId pf, double beta,
                                     VarId angle_from, VarId angle_to, double pf_max, double X) {
    if (!(beta > 0.0)) throw ModelError(prefix + ": susceptance must be positive");
    const auto& af = ir.var(angle_from);
    const auto& at = ir.var(angle_to);
    const double span = std::max(std::abs(af.upper - at.lower), std::abs(af.lower - at.upper));
    if (!std::isfinite(span)) throw ModelError(prefix + ": bus angles need finite bounds");
    if (X < span - 1e-12) throw ModelError(prefix + ": X is below the angle-difference span");
    detail::FragmentBuilder b(ir, prefix);
    b.row("pf_hi", LinearExpr(pf) + LinearExpr(u, -pf_max), Sense::le, 0.0);
    b.row("pf_lo", LinearExpr(pf) + LinearExpr(u, pf_max), Sense::ge, 0.0);
    LinearExpr gap = LinearExpr(pf, 1.0 / beta) - LinearExpr(angle_from) + LinearExpr(angle_to);
    b.big_m("X", X, "angle-difference span", gap);
    b.row("kvl_hi", gap + LinearExpr(u, X), Sense::le, X);
    b.row("kvl_lo", gap + LinearExpr(u, -X), Sense::ge, -X);
    b.frag.output = LinearExpr(pf);
    return std::move(b.frag);
}

/// Output equals |pf| for |pf| <= X: binary d picks the sign, zeta = d pf, |pf| = 2 zeta - pf.
inline GadgetFragment gadget_abs_flow(ModelIR& ir, const std::string& prefix, const LinearExpr& pf, double pf_bound,
                                      double X) {
    if (X < pf_bound) throw ModelError(prefix + ": X is below the flow bound");
    detail::FragmentBuilder b(ir, prefix);
    const VarId d = b.bin("d");
    b.big_m("X", X, "flow bound", pf);
    b.row("pos", pf + LinearExpr(d, -X), Sense::le, 0.0);
    b.row("neg", pf + LinearExpr(d, -X), Sense::ge, -X);
    auto zeta = gadget_bin_cont_product(ir, prefix + ".zeta", d, pf, pf_bound, X);
    b.absorb(zeta);
    b.frag.output = 2.0 * zeta.output - pf;
    return std::move(b.frag);
}

inline GadgetFragment gadget_abs_flow(ModelIR& ir, const std::string& prefix, VarId pf,
                                      std::optional<double> X = std::nullopt) {
    const double bound = detail::var_abs_bound(ir, pf);
    return gadget_abs_flow(ir, prefix, LinearExpr(pf), bound, X.value_or(bound));
}

/// Keeps only the larger forced-convection branch: binary y = 1 when k1 >= k2, and the
/// other branch's heat is forced to zero. With k1 == k2 either value of y is feasible.
inline GadgetFragment gadget_convection_select(ModelIR& ir, const std::string& prefix, double k1, double k2, VarId q1,
                                               VarId q2, double M) {
    if (k1 < 0.0 || k2 < 0.0) throw ModelError(prefix + ": convection coefficients must be non-negative");
    if (!(M > 0.0) || !std::isfinite(M)) throw ModelError(prefix + ": convection M must be positive and finite");
    detail::FragmentBuilder b(ir, prefix);
    const VarId y = b.bin("y");
    b.row("k1_ge", LinearExpr(y, k2), Sense::le, k1);
    b.row("k1_le", LinearExpr(y, -k1), Sense::le, k2 - k1);
    b.big_m("M1", M, "k1_max * (t_max - ambient_min) * 1.5", LinearExpr(q1));
    b.big_m("M2", M, "k1_max * (t_max - ambient_min) * 1.5", LinearExpr(q2));
    b.row("q1_off", LinearExpr(q1) + LinearExpr(y, -M), Sense::le, 0.0);
    b.row("q2_off", LinearExpr(q2) + LinearExpr(y, M), Sense::le, M);
    b.frag.output = LinearExpr(q1) + LinearExpr(q2);
    return std::move(b.frag);
}

/// Linear cosine/sine of an angle-difference variable x on [-0.6, 0.6]:
/// binary l selects the half-domain, w = l x.
struct TrigFragment {
    GadgetFragment frag;
    VarId side;
    LinearExpr cos;
    LinearExpr sin;
};

inline TrigFragment gadget_trig(ModelIR& ir, const std::string& prefix, VarId x, const TrigFit& fit) {
    const auto& xv = ir.var(x);
    if (xv.lower < -kAngleDomain - 1e-12 || xv.upper > kAngleDomain + 1e-12)
        throw ModelError(prefix + ": trig argument must stay within the fitted domain");
    detail::FragmentBuilder b(ir, prefix);
    const VarId l = b.bin("l");
    b.row("x_lo", LinearExpr(x) + LinearExpr(l, -kAngleDomain), Sense::ge, -kAngleDomain);
    b.row("x_hi", LinearExpr(x) + LinearExpr(l, -kAngleDomain), Sense::le, 0.0);
    auto w = gadget_bin_cont_product(ir, prefix + ".lx", l, x);
    b.absorb(w);
    TrigFragment out;
    out.side = l;
    // (1 - l)(s1 x + m1) + l (s2 x + m2)
    out.cos = LinearExpr(x, fit.cos_neg.slope) + fit.cos_neg.intercept;
    out.cos += w.output * (fit.cos_pos.slope - fit.cos_neg.slope);
    out.cos += LinearExpr(l, fit.cos_pos.intercept - fit.cos_neg.intercept);
    out.sin = LinearExpr(x, fit.sin.slope) + fit.sin.intercept;
    out.frag = std::move(b.frag);
    return out;
}

}  // namespace gridxpand

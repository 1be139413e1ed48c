#include "expd/measure.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace expd {

std::vector<Direction> distinct_directions(const MixedDirection& m) {
    std::vector<Direction> out;
    for (Direction d : m)
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    return out;
}

static void check_box_matches_path(const PolyTuple& t, const MixedDirection& m,
                                   const BoxDomain& box) {
    auto dirs = distinct_directions(m);
    std::set<int> want;
    for (Direction d : dirs) {
        if (d.var < 0 || d.var >= t.arity()) throw std::out_of_range("direction out of range");
        want.insert(d.var);
    }
    std::set<int> have;
    for (const auto& lim : box.limits) {
        if (!have.insert(lim.var).second)
            throw std::invalid_argument("duplicate box direction");
    }
    if (want != have)
        throw std::invalid_argument("box directions must equal the path's distinct directions");
}

Polynomial area(const PolyTuple& t, const MixedDirection& m, const BoxDomain& box) {
    check_box_matches_path(t, m, box);
    PolyTuple g = expand_mixed(t, m);
    Polynomial total = Polynomial::zero(t.arity());
    for (int j = 0; j < g.size(); ++j) total = total + integrate_box(g[j], box.limits);
    return total;
}

// The scalar checkers need every dependent variable integrated out.
static void ensure_fully_integrated(const PolyTuple& g, const std::vector<Direction>& dirs) {
    for (int v = 0; v < g.arity(); ++v) {
        bool covered = false;
        for (Direction d : dirs)
            if (d.var == v) covered = true;
        if (covered) continue;
        for (int j = 0; j < g.size(); ++j)
            if (x_index(g[j], v) > 0)
                throw std::invalid_argument(
                    "the path must cover every variable the tuple depends on");
    }
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature
// ---------------------------------------------------------------------------

namespace {

constexpr int kGaussOrder = 16;
constexpr int kMaxLevels = 6;

struct GaussRule {
    double nodes[kGaussOrder];
    double weights[kGaussOrder];
};

// Nodes and weights on [-1, 1] by Newton iteration on the Legendre
// recurrence.
const GaussRule& gauss_rule() {
    static const GaussRule rule = [] {
        GaussRule r{};
        const int n = kGaussOrder;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int j = 0; j < n; ++j) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
                }
                pp = n * (x * p0 - p1) / (x * x - 1.0);
                double dx = p0 / pp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            r.nodes[i] = -x;
            r.nodes[n - 1 - i] = x;
            r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
            r.weights[n - 1 - i] = r.weights[i];
        }
        return r;
    }();
    return rule;
}

// Flattened term view of one polynomial for fast repeated evaluation.
struct CompiledPoly {
    struct Term {
        double coeff;
        std::vector<std::uint32_t> exps;
    };
    std::vector<Term> terms;

    static CompiledPoly compile(const Polynomial& p) {
        CompiledPoly c;
        for (const auto& [m, q] : p.terms()) c.terms.push_back({q.get_d(), m.exps});
        return c;
    }

    double eval(const std::vector<double>& point) const {
        double acc = 0.0;
        for (const auto& t : terms) {
            double v = t.coeff;
            for (std::size_t i = 0; i < t.exps.size(); ++i) {
                double b = point[i];
                std::uint32_t e = t.exps[i];
                while (e-- > 0) v *= b;
            }
            acc += v;
        }
        return acc;
    }
};

// Integrates sqrt(sum of squares) over the box at one subdivision level,
// with fixed traversal order so the result is reproducible.
double level_estimate(const std::vector<CompiledPoly>& gs, const PolyTuple& g,
                      const BoxDomain& box, int level) {
    const auto& rule = gauss_rule();
    const int dims = static_cast<int>(box.limits.size());
    const int cells_per_axis = 1 << level;

    std::vector<double> lo(dims), width(dims);
    for (int a = 0; a < dims; ++a) {
        lo[a] = box.limits[a].lo.get_d();
        width[a] = (box.limits[a].hi.get_d() - lo[a]) / cells_per_axis;
    }

    std::vector<double> point(g.arity(), 0.0);
    std::vector<int> cell(dims, 0), node(dims, 0);

    double total = 0.0;
    while (true) {
        // one cell: tensor product over the nodes
        double cell_sum = 0.0;
        std::fill(node.begin(), node.end(), 0);
        while (true) {
            double w = 1.0;
            for (int a = 0; a < dims; ++a) {
                double c0 = lo[a] + cell[a] * width[a];
                point[box.limits[a].var] = c0 + 0.5 * width[a] * (rule.nodes[node[a]] + 1.0);
                w *= 0.5 * width[a] * rule.weights[node[a]];
            }
            double ss = 0.0;
            for (const auto& cp : gs) {
                double v = cp.eval(point);
                ss += v * v;
            }
            cell_sum += w * std::sqrt(ss);

            int a = 0;
            for (; a < dims; ++a) {
                if (++node[a] < kGaussOrder) break;
                node[a] = 0;
            }
            if (a == dims) break;
        }
        total += cell_sum;

        int a = 0;
        for (; a < dims; ++a) {
            if (++cell[a] < cells_per_axis) break;
            cell[a] = 0;
        }
        if (a == dims) break;
    }
    return total;
}

} // namespace

QuadratureResult norm2_integral(const PolyTuple& g, const BoxDomain& box, double tol) {
    std::set<int> covered;
    for (const auto& lim : box.limits) {
        if (lim.var < 0 || lim.var >= g.arity()) throw std::out_of_range("direction out of range");
        if (!covered.insert(lim.var).second)
            throw std::invalid_argument("duplicate box direction");
    }
    for (int j = 0; j < g.size(); ++j)
        for (int v = 0; v < g.arity(); ++v)
            if (!covered.count(v) && x_index(g[j], v) > 0)
                throw std::invalid_argument("box must cover every variable the tuple depends on");

    QuadratureResult res;
    if (g.is_null()) {
        res.converged = true;
        return res;
    }

    std::vector<CompiledPoly> gs;
    for (int j = 0; j < g.size(); ++j) gs.push_back(CompiledPoly::compile(g[j]));

    double prev = 0.0;
    for (int level = 0; level <= kMaxLevels; ++level) {
        double cur = level_estimate(gs, g, box, level);
        res.value = cur;
        res.levels = level;
        if (level > 0) {
            res.error_estimate = std::abs(cur - prev);
            double scale = std::max(std::abs(cur), std::abs(prev));
            if (res.error_estimate <= tol * scale) {
                res.converged = true;
                return res;
            }
        }
        prev = cur;
    }
    return res; // best estimate with its error bound; converged stays false
}

InequalityReport check_integral_inequality(const PolyTuple& t, const MixedDirection& m,
                                           const BoxDomain& box, double tol) {
    check_box_matches_path(t, m, box);
    PolyTuple g = expand_mixed(t, m);

    InequalityReport rep;
    QuadratureResult q = norm2_integral(g, box, tol);
    rep.lhs = q.value;
    rep.quadrature_error_estimate = q.error_estimate;
    if (!q.converged) rep.note = "quadrature did not reach the requested tolerance";

    Rational sum_sq(0);
    for (int j = 0; j < g.size(); ++j) {
        Rational ij = integrate_box(g[j], box.limits).constant_value();
        sum_sq += ij * ij;
    }
    rep.rhs = std::sqrt(sum_sq.get_d());
    rep.margin = rep.lhs - rep.rhs;
    rep.holds = rep.margin >= -tol;
    return rep;
}

InequalityReport check_min_gap(const PolyTuple& t, const MixedDirection& m, const BoxDomain& box) {
    check_box_matches_path(t, m, box);
    PolyTuple g = expand_mixed(t, m);
    ensure_fully_integrated(g, distinct_directions(m));

    InequalityReport rep;

    // Sampled hypothesis check: sum of squares <= 1 on a 17^l grid,
    // evaluated exactly at rational grid points.
    const int samples = 17;
    const int dims = static_cast<int>(box.limits.size());
    std::vector<int> idx(dims, 0);
    std::vector<Rational> point(t.arity(), Rational(0));
    while (true) {
        for (int a = 0; a < dims; ++a) {
            Rational span = box.limits[a].hi - box.limits[a].lo;
            point[box.limits[a].var] =
                box.limits[a].lo + span * Rational(idx[a], samples - 1);
        }
        Rational ss(0);
        for (int j = 0; j < g.size(); ++j) {
            Rational v = g[j].eval(point);
            ss += v * v;
        }
        if (ss > 1) {
            rep.applicable = false;
            rep.note = "hypothesis violated: squared entries exceed 1 at a sample point";
            return rep;
        }
        int a = 0;
        for (; a < dims; ++a) {
            if (++idx[a] < samples) break;
            idx[a] = 0;
        }
        if (a == dims) break;
    }

    Rational lhs(1);
    for (const auto& lim : box.limits) {
        Rational gap = lim.hi - lim.lo;
        lhs *= gap < 0 ? Rational(-gap) : gap;
    }
    Rational rhs_sq(0);
    for (int j = 0; j < g.size(); ++j) {
        Rational ij = integrate_box(g[j], box.limits).constant_value();
        rhs_sq += ij * ij;
    }
    rep.lhs = lhs.get_d();
    rep.rhs = std::sqrt(rhs_sq.get_d());
    rep.margin = rep.lhs - rep.rhs;
    rep.holds = lhs * lhs >= rhs_sq; // exact comparison
    return rep;
}

Spot cross_product(const std::vector<Spot>& vs) {
    if (vs.empty()) throw std::invalid_argument("cross product needs at least one vector");
    const int l = static_cast<int>(vs.front().coords.size());
    if (l < 2) throw std::invalid_argument("cross product needs dimension >= 2");
    if (static_cast<int>(vs.size()) != l - 1)
        throw std::invalid_argument("cross product needs exactly dimension-1 vectors");
    for (const auto& v : vs)
        if (static_cast<int>(v.coords.size()) != l)
            throw std::invalid_argument("cross product vectors must share one dimension");

    // Laplace expansion of the minor with column `skip` removed.
    auto det = [&](auto&& self, std::vector<int> rows, std::vector<int> cols) -> Rational {
        if (rows.size() == 1) return vs[rows[0]].coords[cols[0]];
        Rational acc(0);
        int sign = 1;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            std::vector<int> sub_rows(rows.begin() + 1, rows.end());
            std::vector<int> sub_cols;
            for (std::size_t k = 0; k < cols.size(); ++k)
                if (k != c) sub_cols.push_back(cols[k]);
            Rational minor = self(self, sub_rows, sub_cols);
            acc += Rational(sign) * vs[rows[0]].coords[cols[c]] * minor;
            sign = -sign;
        }
        return acc;
    };

    Spot out;
    out.coords.resize(l);
    std::vector<int> all_rows(l - 1);
    for (int i = 0; i < l - 1; ++i) all_rows[i] = i;
    for (int skip = 0; skip < l; ++skip) {
        std::vector<int> cols;
        for (int c = 0; c < l; ++c)
            if (c != skip) cols.push_back(c);
        Rational minor = det(det, all_rows, cols);
        // Cofactor of the basis row placed last in the formal determinant.
        int sign = ((l - 1 + skip) % 2 == 0) ? 1 : -1;
        out.coords[skip] = Rational(sign) * minor;
    }
    return out;
}

double spot_norm(const Spot& s) {
    Rational ss(0);
    for (const auto& c : s.coords) ss += c * c;
    return std::sqrt(ss.get_d());
}

static BoxDomain box_between(const std::vector<Direction>& dirs, const Spot& a, const Spot& b) {
    BoxDomain box;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        Rational lo = std::min(a.coords[i], b.coords[i]);
        Rational hi = std::max(a.coords[i], b.coords[i]);
        box.limits.push_back({dirs[i].var, lo, hi});
    }
    return box;
}

double volume(const PolyTuple& t, const MixedDirection& m, const std::vector<Spot>& spots) {
    auto dirs = distinct_directions(m);
    const int l = static_cast<int>(dirs.size());
    if (static_cast<int>(spots.size()) != l)
        throw std::invalid_argument("volume needs as many spots as distinct path directions");
    for (const auto& s : spots)
        if (static_cast<int>(s.coords.size()) != l)
            throw std::invalid_argument("spot dimension mismatch");
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
            if (spots[i].coords == spots[j].coords)
                throw std::invalid_argument("spots must be pairwise distinct");
    ensure_fully_integrated(expand_mixed(t, m), dirs);

    double total = 0.0;
    for (int s = 0; s < l; ++s) {
        for (int u = s + 1; u < l; ++u) {
            Rational a = area(t, m, box_between(dirs, spots[s], spots[u])).constant_value();
            double norms = 0.0;
            for (int v = 0; v < l; ++v) {
                if (v == s || v == u) continue;
                std::vector<Spot> rest;
                for (int k = 0; k < l; ++k)
                    if (k != v) rest.push_back(spots[k]);
                norms += spot_norm(cross_product(rest));
            }
            total += a.get_d() * norms;
        }
    }
    return total;
}

namespace {

// Grid estimate of max over the box, refined once around the best cell.
double grid_max(const Polynomial& p, const BoxDomain& box, int per_axis) {
    const int dims = static_cast<int>(box.limits.size());
    std::vector<double> lo(dims), hi(dims);
    for (int a = 0; a < dims; ++a) {
        lo[a] = box.limits[a].lo.get_d();
        hi[a] = box.limits[a].hi.get_d();
    }
    auto sweep = [&](const std::vector<double>& from, const std::vector<double>& to,
                     std::vector<double>* arg_best) {
        std::vector<int> idx(dims, 0);
        std::vector<double> point(p.arity(), 0.0);
        double best = -1e308;
        while (true) {
            for (int a = 0; a < dims; ++a) {
                double t01 = per_axis == 1 ? 0.0 : double(idx[a]) / (per_axis - 1);
                point[box.limits[a].var] = from[a] + (to[a] - from[a]) * t01;
            }
            double v = p.eval_double(point);
            if (v > best) {
                best = v;
                if (arg_best)
                    for (int a = 0; a < dims; ++a)
                        (*arg_best)[a] = from[a] + (to[a] - from[a]) *
                                                       (per_axis == 1 ? 0.0 : double(idx[a]) / (per_axis - 1));
            }
            int a = 0;
            for (; a < dims; ++a) {
                if (++idx[a] < per_axis) break;
                idx[a] = 0;
            }
            if (a == dims) break;
        }
        return best;
    };

    std::vector<double> best_point(dims, 0.0);
    double coarse = sweep(lo, hi, &best_point);

    // One refinement pass around the best sample.
    std::vector<double> rlo(dims), rhi(dims);
    for (int a = 0; a < dims; ++a) {
        double step = (hi[a] - lo[a]) / std::max(1, per_axis - 1);
        rlo[a] = std::max(lo[a], best_point[a] - step);
        rhi[a] = std::min(hi[a], best_point[a] + step);
    }
    double fine = sweep(rlo, rhi, nullptr);
    return std::max(coarse, fine);
}

} // namespace

InequalityReport check_average_inequality(const PolyTuple& t, const MixedDirection& m,
                                          const std::vector<Spot>& spots, double tol) {
    auto dirs = distinct_directions(m);
    const int l = static_cast<int>(dirs.size());
    if (static_cast<int>(spots.size()) != l)
        throw std::invalid_argument("needs as many spots as distinct path directions");
    if (l < 3) throw std::invalid_argument("needs at least three spots for the cross factors");

    PolyTuple g = expand_mixed(t, m);
    ensure_fully_integrated(g, dirs);
    InequalityReport rep;
    rep.approximate = true;
    rep.note = "per-entry maxima grid-estimated";
    if (g.is_null()) {
        rep.holds = true;
        return rep;
    }

    double lhs = 0.0, rhs_sum = 0.0;
    const int s_len = g.size();

    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) {
            if (i == j) continue;
            bool ordered = true;
            for (int a = 0; a < l && ordered; ++a)
                if (!(spots[i].coords[a] < spots[j].coords[a])) ordered = false;
            if (!ordered) continue;

            BoxDomain box = box_between(dirs, spots[i], spots[j]);
            Rational entry_sum(0);
            for (int k = 0; k < s_len; ++k) {
                Rational ik = integrate_box(g[k], box.limits).constant_value();
                if (!(ik > 0)) {
                    rep.applicable = false;
                    rep.note = "hypothesis violated: an entry integral is not positive";
                    return rep;
                }
                entry_sum += ik;
            }

            double norms = 0.0;
            for (int v = 0; v < l; ++v) {
                if (v == i || v == j) continue;
                std::vector<Spot> rest;
                for (int k = 0; k < l; ++k)
                    if (k != v) rest.push_back(spots[k]);
                norms += spot_norm(cross_product(rest));
            }
            lhs += norms * entry_sum.get_d();

            double max_sq = 0.0;
            for (int k = 0; k < s_len; ++k) {
                double mk = grid_max(g[k], box, 33);
                max_sq += mk * mk;
            }
            Rational vol(1);
            for (const auto& lim : box.limits) vol *= lim.hi - lim.lo;
            rhs_sum += vol.get_d() * std::sqrt(max_sq);
        }
    }

    double pairs = double(s_len) * (s_len - 1) / 2.0;
    rep.lhs = lhs;
    rep.rhs = 2.0 * pairs * std::sqrt(double(s_len)) * rhs_sum;
    rep.margin = rep.rhs - rep.lhs;
    rep.holds = rep.margin >= -tol;
    return rep;
}

} // namespace expd

#include "holoshear/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace holoshear {

std::vector<std::vector<int>> wp_coefficients(const FatGraph& g) {
    const int E = g.edge_count();
    std::vector<std::vector<int>> pi(E, std::vector<int>(E, 0));
    for (int e = 0; e < E; ++e) {
        for (int h : g.half_edges_of(e)) {
            pi[e][g.edge_of(g.nu(h))] += 1;        // successor slot
            pi[e][g.edge_of(g.nu_inv(h))] -= 1;    // predecessor slot
        }
    }
    return pi;
}

Bivector make_bivector(const FatGraph& g, BivectorKind kind) {
    return Bivector{kind, g.edge_count(), wp_coefficients(g)};
}

DMat coefficient_matrix(const Bivector& b) {
    const int E = b.edges;
    switch (b.kind) {
        case BivectorKind::WeilPetersson: {
            DMat c = dmat(E, E);
            for (int i = 0; i < E; ++i)
                for (int j = 0; j < E; ++j) c[i][j] = b.wp[i][j];
            return c;
        }
        case BivectorKind::Gravitational: {
            DMat c = dmat(2 * E, 2 * E);
            for (int i = 0; i < E; ++i)
                for (int j = 0; j < E; ++j) {
                    c[i][E + j] = 0.5 * b.wp[i][j];
                    c[E + i][j] = 0.5 * b.wp[i][j];
                }
            return c;
        }
        case BivectorKind::CotangentBundle: {
            DMat c = dmat(2 * E, 2 * E);
            for (int i = 0; i < E; ++i) {
                c[i][E + i] = 1.0;
                c[E + i][i] = -1.0;
            }
            return c;
        }
    }
    throw std::logic_error("coefficient_matrix: unknown kind");
}

bool constraints_casimir_exact(const FatGraph& g) {
    const auto pi = wp_coefficients(g);
    const int E = g.edge_count();
    for (const Face& f : g.faces()) {
        for (int b = 0; b < E; ++b) {
            long s = 0;
            for (int a = 0; a < E; ++a) s += static_cast<long>(f.multiplicity[a]) * pi[a][b];
            if (s != 0) return false;
        }
    }
    return true;
}

int wp_rank(const FatGraph& g) {
    const auto pi = wp_coefficients(g);
    const int E = g.edge_count();
    DMat m = dmat(E, E);
    for (int i = 0; i < E; ++i)
        for (int j = 0; j < E; ++j) m[i][j] = pi[i][j];
    return static_cast<int>(rank(m));
}

double numeric_partial(const ScalarFn& f, std::vector<double> at, std::size_t i,
                       double step) {
    auto central = [&](double h) {
        const double orig = at[i];
        at[i] = orig + h;
        const double fp = f(at);
        at[i] = orig - h;
        const double fm = f(at);
        at[i] = orig;
        return (fp - fm) / (2.0 * h);
    };
    const double d1 = central(step);
    const double d2 = central(step / 2.0);
    if (std::abs(d1 - d2) > 1e-4 * std::max(1.0, std::abs(d2)))
        return (4.0 * d2 - d1) / 3.0;
    return d2;
}

std::vector<double> numeric_gradient(const ScalarFn& f, const std::vector<double>& at,
                                     double step) {
    std::vector<double> grad(at.size());
    for (std::size_t i = 0; i < at.size(); ++i) grad[i] = numeric_partial(f, at, i, step);
    return grad;
}

double bracket(const ScalarFn& f, const ScalarFn& g, const DMat& coeff,
               const std::vector<double>& at, double step) {
    if (coeff.size() != at.size())
        throw std::invalid_argument("bracket: dimension mismatch");
    const auto gf = numeric_gradient(f, at, step);
    const auto gg = numeric_gradient(g, at, step);
    double tot = 0;
    for (std::size_t i = 0; i < at.size(); ++i)
        for (std::size_t j = 0; j < at.size(); ++j) tot += gf[i] * coeff[i][j] * gg[j];
    return tot;
}

GenShearVector pi_sharp(const CotangentVector& cv, const FatGraph& g, Lambda l) {
    require_same_graph(g.fingerprint(), cv.graph_fp, "pi_sharp");
    const auto pi = wp_coefficients(g);
    const int E = g.edge_count();
    std::vector<double> y(E, 0.0);
    for (int a = 0; a < E; ++a)
        for (int b = 0; b < E; ++b) y[a] += pi[a][b] * cv.p[b];
    return make_gen(cv.x, y, l, cv.graph_fp);
}

bool pi_sharp_pushforward_identity(const FatGraph& g) {
    // J = [[I, 0], [0, pi]]; check J C_T* J^T == -2 C_Lambda in exact integers.
    const auto pi = wp_coefficients(g);
    const int E = g.edge_count();
    auto J = [&](int i, int j) -> long {
        if (i < E && j < E) return i == j ? 1 : 0;
        if (i >= E && j >= E) return pi[i - E][j - E];
        return 0;
    };
    auto C = [&](int i, int j) -> long {   // cotangent coefficients
        if (i < E && j == E + i) return 1;
        if (i >= E && j == i - E) return -1;
        return 0;
    };
    auto target = [&](int i, int j) -> long {   // -2 * gravitational coefficients
        if (i < E && j >= E) return -pi[i][j - E];
        if (i >= E && j < E) return -pi[i - E][j];
        return 0;
    };
    for (int i = 0; i < 2 * E; ++i)
        for (int j = 0; j < 2 * E; ++j) {
            long s = 0;
            for (int k = 0; k < 2 * E; ++k)
                for (int m = 0; m < 2 * E; ++m) s += J(i, k) * C(k, m) * J(j, m);
            if (s != target(i, j)) return false;
        }
    return true;
}

bool pi_sharp_kills_constraint_differentials(const FatGraph& g) {
    const auto pi = wp_coefficients(g);
    const int E = g.edge_count();
    for (const Face& f : g.faces())
        for (int a = 0; a < E; ++a) {
            long s = 0;
            for (int b = 0; b < E; ++b) s += static_cast<long>(pi[a][b]) * f.multiplicity[b];
            if (s != 0) return false;
        }
    return true;
}

DMat dirac_constraint_matrix(const ConstraintMap& cm) {
    // pairing of the stacked constraints (c~, c) under {x^a, p_b} = delta^a_b:
    // {c~_i, c^j} = -M_i^j and {c^i, c~_j} = M_j^i; for the default symmetric
    // gauge this is the familiar [[0, -M^T], [M, 0]] block form
    const int F = cm.faces();
    const auto m = cm.dirac_matrix();
    DMat d = dmat(2 * F, 2 * F);
    for (int i = 0; i < F; ++i)
        for (int j = 0; j < F; ++j) {
            d[i][F + j] = -m[i][j];
            d[F + i][j] = m[j][i];
        }
    return d;
}

double dirac_bracket_from_gradients(const std::vector<double>& gf,
                                    const std::vector<double>& gg,
                                    const ConstraintMap& cm) {
    const int E = cm.edges(), F = cm.faces();
    if (static_cast<int>(gf.size()) != 2 * E || static_cast<int>(gg.size()) != 2 * E)
        throw std::invalid_argument("dirac_bracket: expected (x, p) gradients of size 2E");
    if (!cm.gauge_admissible())
        throw CoordsError("dirac_bracket: gauge fixing is inadmissible (singular M)");

    Bivector cot{BivectorKind::CotangentBundle, E, {}};
    const DMat c = coefficient_matrix(cot);

    auto contract = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double t = 0;
        for (int i = 0; i < 2 * E; ++i)
            for (int j = 0; j < 2 * E; ++j) t += u[i] * c[i][j] * v[j];
        return t;
    };

    // exact gradients of the stacked linear constraints (c~, c)
    std::vector<std::vector<double>> dphi(2 * F, std::vector<double>(2 * E, 0.0));
    for (int i = 0; i < F; ++i)
        for (int a = 0; a < E; ++a) {
            dphi[i][E + a] = cm.theta_tilde()[i][a];
            dphi[F + i][a] = cm.theta()[i][a];
        }

    const DMat dinv = invert(dirac_constraint_matrix(cm));

    double out = contract(gf, gg);
    for (int i = 0; i < 2 * F; ++i) {
        const double fi = contract(gf, dphi[i]);
        if (fi == 0.0) continue;
        for (int j = 0; j < 2 * F; ++j) {
            const double gj = contract(gg, dphi[j]);
            out += dinv[i][j] * fi * gj;
        }
    }
    return out;
}

double dirac_bracket(const ScalarFn& f, const ScalarFn& g, const ConstraintMap& cm,
                     const std::vector<double>& at, double step) {
    return dirac_bracket_from_gradients(numeric_gradient(f, at, step),
                                        numeric_gradient(g, at, step), cm);
}

// ---------------------------------------------------------------------------
// Goldman bracket.
// ---------------------------------------------------------------------------

LieVec trace_gradient_lie(const Mat2& rho) {
    const Lambda l = rho.lambda;
    // six basis directions J_0, J_1, J_2, P_0, P_1, P_2
    std::vector<LieVec> basis;
    for (int i = 0; i < 3; ++i) basis.push_back(LieVec::basis_J(i, l));
    for (int i = 0; i < 3; ++i) basis.push_back(LieVec::basis_P(i, l));

    DMat sys = dmat(6, 6);
    std::vector<double> rhs(6);
    for (int m = 0; m < 6; ++m) {
        for (int u = 0; u < 6; ++u) sys[m][u] = kappa(basis[u], basis[m]).im;
        rhs[m] = trace(rho * to_matrix(basis[m])).im;
    }
    std::vector<double> sol;
    try {
        sol = solve(sys, rhs);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("trace_gradient_lie: degenerate system, resample the point");
    }
    LieVec f = LieVec::basis_J(0, l);
    f.v0 = RNum(sol[0], sol[3], l);
    f.v1 = RNum(sol[1], sol[4], l);
    f.v2 = RNum(sol[2], sol[5], l);
    return f;
}

namespace {

struct Run {
    int i0, j0, len;
};

std::vector<Run> shared_runs(const std::vector<int>& pa, const std::vector<int>& pb) {
    const int n = static_cast<int>(pa.size()), m = static_cast<int>(pb.size());
    std::set<std::pair<int, int>> used;
    std::vector<Run> runs;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            if (pa[i] != pb[j] || used.count({i, j})) continue;
            int i0 = i, j0 = j;
            while (pa[(i0 - 1 + n) % n] == pb[(j0 - 1 + m) % m] &&
                   !((i0 - 1 + n) % n == i && (j0 - 1 + m) % m == j)) {
                i0 = (i0 - 1 + n) % n;
                j0 = (j0 - 1 + m) % m;
            }
            int len = 1;
            while (len < std::max(n, m) && pa[(i0 + len) % n] == pb[(j0 + len) % m]) ++len;
            for (int t = 0; t < len; ++t) used.insert({(i0 + t) % n, (j0 + t) % m});
            runs.push_back({i0, j0, len});
        }
    return runs;
}

int turn_sign(const FatGraph& g, int from, int to) {
    return g.turn_between(from, to) == Turn::Left ? 1 : -1;
}

} // namespace

GoldmanReport goldman_bracket_traces(const FatGraph& g, const EdgePath& a,
                                     const EdgePath& b, const GenShearVector& z,
                                     double step) {
    g.validate_path(a);
    g.validate_path(b);
    require_same_graph(g.fingerprint(), z.graph_fp, "goldman_bracket_traces");
    GoldmanReport rep;

    const Lambda l = z.lambda;
    const int E = g.edge_count();

    // route (i): numeric gradient contraction
    auto trace_fn = [&](const EdgePath& p) {
        return ScalarFn([&g, p, l, E](const std::vector<double>& v) {
            GenShearVector zz = unflatten_gen(v, l, g.fingerprint());
            return trace(holonomy(g, p, zz)).im;
        });
    };
    const Bivector grav = make_bivector(g, BivectorKind::Gravitational);
    rep.numeric = bracket(trace_fn(a), trace_fn(b), coefficient_matrix(grav), flatten(z), step);

    // identical curves: the bracket vanishes by antisymmetry
    if (g.cyclically_equal(a, b) || g.cyclically_equal(a, g.reverse_path(b))) {
        rep.lie = 0.0;
        return rep;
    }

    // route (ii): based segment sum
    const auto frames_a = prefix_frames(g, a, z);
    const LieVec Fa = trace_gradient_lie(holonomy(g, a, z));

    for (int pass = 0; pass < 2; ++pass) {
        const EdgePath q = pass == 0 ? b : g.reverse_path(b);
        const auto frames_b = prefix_frames(g, q, z);
        const LieVec Gb = trace_gradient_lie(holonomy(g, q, z));
        const int n = static_cast<int>(a.tails.size());
        const int m = static_cast<int>(q.tails.size());
        for (const Run& r : shared_runs(a.tails, q.tails)) {
            const int ia_last = (r.i0 + r.len - 1) % n;
            const int jb_last = (r.j0 + r.len - 1) % m;
            const int sa_merge = turn_sign(g, a.tails[(r.i0 - 1 + n) % n], a.tails[r.i0]);
            const int sb_split = turn_sign(g, q.tails[jb_last], q.tails[(jb_last + 1) % m]);
            const double eps = 0.5 * (sa_merge + sb_split);

            const LieVec Fp = ad_action(inverse_unit_det(frames_a[ia_last]), Fa);
            const LieVec Gp = ad_action(inverse_unit_det(frames_b[jb_last]), Gb);
            const double contribution = eps * 0.5 * kappa(Fp, Gp).im;
            rep.lie += contribution;
            rep.segments.push_back({pass == 1, r.len, eps, contribution});
        }
    }
    return rep;
}

FlowCheckReport hamiltonian_flow_check(const FatGraph& g, const EdgePath& a,
                                       const GenShearVector& z, bool re_part,
                                       double step) {
    g.validate_path(a);
    require_same_graph(g.fingerprint(), z.graph_fp, "hamiltonian_flow_check");
    const Lambda l = z.lambda;
    const int E = g.edge_count();
    const int n = static_cast<int>(a.tails.size());
    const auto pi = wp_coefficients(g);

    const Mat2 rho = holonomy(g, a, z);
    const auto jk = lievec_frames(g, a, z);
    const RNum ell = RNum::ell(l);

    FlowCheckReport rep;

    // closed form: {part Tr rho, z^b} = (1/2) sum_k pi^{a_k b} Tr((ell) J_k rho)
    std::vector<RNum> closed(E, RNum::real(0, l));
    for (int b = 0; b < E; ++b) {
        RNum s = RNum::real(0, l);
        for (int k = 0; k < n; ++k) {
            const int ak = g.edge_of(a.tails[k]);
            if (pi[ak][b] == 0) continue;
            RNum t = trace(to_matrix(jk[k]) * rho);
            if (re_part) t = ell * t;
            s = s + 0.5 * static_cast<double>(pi[ak][b]) * t;
        }
        closed[b] = s;
    }

    // numeric: gradient of the trace part, contracted coordinatewise
    ScalarFn f = [&g, &a, l, E, re_part](const std::vector<double>& v) {
        GenShearVector zz = unflatten_gen(v, l, g.fingerprint());
        const RNum t = trace(holonomy(g, a, zz));
        return re_part ? t.re : t.im;
    };
    const auto grad = numeric_gradient(f, flatten(z), step);
    for (int b = 0; b < E; ++b) {
        double br_x = 0, br_y = 0;   // {f, x^b} and {f, y^b}
        for (int al = 0; al < E; ++al) {
            br_x += grad[E + al] * 0.5 * pi[al][b];
            br_y += grad[al] * 0.5 * pi[al][b];
        }
        rep.max_bracket_err = std::max(rep.max_bracket_err, std::abs(br_x - closed[b].re));
        rep.max_bracket_err = std::max(rep.max_bracket_err, std::abs(br_y - closed[b].im));
    }

    // derivative identity d rho / d y^alpha = sum_{k: a_k = alpha} ell J_k rho
    const double h = 1e-6;
    for (int alpha = 0; alpha < E; ++alpha) {
        bool touches = false;
        for (int k = 0; k < n; ++k) touches |= g.edge_of(a.tails[k]) == alpha;
        if (!touches) continue;
        GenShearVector zp = z, zm = z;
        zp.z[alpha] = zp.z[alpha] + RNum(0, h, l);
        zm.z[alpha] = zm.z[alpha] - RNum(0, h, l);
        const Mat2 fd = (1.0 / (2.0 * h)) * (holonomy(g, a, zp) - holonomy(g, a, zm));
        Mat2 closed_m = Mat2::identity(l);
        bool first = true;
        for (int k = 0; k < n; ++k) {
            if (g.edge_of(a.tails[k]) != alpha) continue;
            const Mat2 term = ell * (to_matrix(jk[k]) * rho);
            closed_m = first ? term : closed_m + term;
            first = false;
        }
        rep.max_derivative_err = std::max(rep.max_derivative_err, distance(fd, closed_m));
    }
    return rep;
}

std::vector<double> flatten(const GenShearVector& z) {
    const int E = static_cast<int>(z.z.size());
    std::vector<double> v(2 * E);
    for (int i = 0; i < E; ++i) {
        v[i] = z.z[i].re;
        v[E + i] = z.z[i].im;
    }
    return v;
}

GenShearVector unflatten_gen(const std::vector<double>& v, Lambda l, std::uint64_t fp) {
    const int E = static_cast<int>(v.size()) / 2;
    std::vector<double> x(v.begin(), v.begin() + E), y(v.begin() + E, v.end());
    return make_gen(std::move(x), std::move(y), l, fp);
}

std::vector<double> flatten(const CotangentVector& cv) {
    const int E = static_cast<int>(cv.x.size());
    std::vector<double> v(2 * E);
    for (int i = 0; i < E; ++i) {
        v[i] = cv.x[i];
        v[E + i] = cv.p[i];
    }
    return v;
}

CotangentVector unflatten_cot(const std::vector<double>& v, std::uint64_t fp) {
    const int E = static_cast<int>(v.size()) / 2;
    CotangentVector cv;
    cv.graph_fp = fp;
    cv.x.assign(v.begin(), v.begin() + E);
    cv.p.assign(v.begin() + E, v.end());
    return cv;
}

} // namespace holoshear

#include "holoshear/moves.hpp"

#include "holoshear/poisson.hpp"
#include "holoshear/rng.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace holoshear {

namespace {

void check_flippable(const FatGraph& g, int edge) {
    if (edge < 0 || edge >= g.edge_count())
        throw MoveError("move: edge index out of range");
    if (g.is_loop(edge))
        throw MoveError("move unsupported on loop edge '" + g.label(edge) + "'");
}

RNum require_invertible_log_arg(const FatGraph& g, int edge, const RNum& z) {
    const RNum w = 1.0 + rexp(z);
    if (norm_form(w) == 0.0)
        throw MoveError("move: 1 + e^z not invertible at edge '" + g.label(edge) + "'");
    return w;
}

} // namespace

MovedShear move_x(const FatGraph& g, const ShearVector& x, int edge) {
    check_flippable(g, edge);
    require_same_graph(g.fingerprint(), x.graph_fp, "move_x");
    auto [post, rec] = g.whitehead(edge);
    const double xa = x.x[edge];
    const double lp = softplus(xa), lm = softplus(-xa);
    ShearVector out = x;
    out.x[g.edge_of(rec.hB)] += lp;
    out.x[g.edge_of(rec.hD)] += lp;
    out.x[g.edge_of(rec.hG)] -= lm;
    out.x[g.edge_of(rec.hE)] -= lm;
    out.x[edge] = -xa;
    out.graph_fp = post.fingerprint();
    return {std::move(post), std::move(out), rec};
}

MovedLam move_lam(const FatGraph& g, const ShearVector& x, const LamVector& w, int edge) {
    check_flippable(g, edge);
    require_same_graph(g.fingerprint(), x.graph_fp, "move_lam");
    require_same_graph(g.fingerprint(), w.graph_fp, "move_lam");
    auto [post, rec] = g.whitehead(edge);
    const Lambda l = w.lambda;
    const double xa = x.x[edge];
    const RNum xwa = w.w[edge] + xa;

    require_invertible_log_arg(g, edge, xwa);
    // log((1 + e^{x+w}) / (1 + e^x)) and the reversed-sign twin
    const RNum dp = log1p_exp(xwa) - softplus(xa);
    const RNum dm = log1p_exp(-xwa) - softplus(-xa);

    LamVector wout = w;
    wout.w[g.edge_of(rec.hB)] = wout.w[g.edge_of(rec.hB)] + dp;
    wout.w[g.edge_of(rec.hD)] = wout.w[g.edge_of(rec.hD)] + dp;
    wout.w[g.edge_of(rec.hG)] = wout.w[g.edge_of(rec.hG)] - dm;
    wout.w[g.edge_of(rec.hE)] = wout.w[g.edge_of(rec.hE)] - dm;
    wout.w[edge] = -w.w[edge];
    wout.graph_fp = post.fingerprint();

    ShearVector xout = x;
    const double lp = softplus(xa), lm = softplus(-xa);
    xout.x[g.edge_of(rec.hB)] += lp;
    xout.x[g.edge_of(rec.hD)] += lp;
    xout.x[g.edge_of(rec.hG)] -= lm;
    xout.x[g.edge_of(rec.hE)] -= lm;
    xout.x[edge] = -xa;
    xout.graph_fp = post.fingerprint();

    return {std::move(post), std::move(xout), std::move(wout), rec};
}

MovedGen move_z(const FatGraph& g, const GenShearVector& z, int edge) {
    check_flippable(g, edge);
    require_same_graph(g.fingerprint(), z.graph_fp, "move_z");
    auto [post, rec] = g.whitehead(edge);
    const RNum za = z.z[edge];
    require_invertible_log_arg(g, edge, za);
    const RNum lp = log1p_exp(za), lm = log1p_exp(-za);
    GenShearVector out = z;
    out.z[g.edge_of(rec.hB)] = out.z[g.edge_of(rec.hB)] + lp;
    out.z[g.edge_of(rec.hD)] = out.z[g.edge_of(rec.hD)] + lp;
    out.z[g.edge_of(rec.hG)] = out.z[g.edge_of(rec.hG)] - lm;
    out.z[g.edge_of(rec.hE)] = out.z[g.edge_of(rec.hE)] - lm;
    out.z[edge] = -za;
    out.graph_fp = post.fingerprint();
    return {std::move(post), std::move(out), rec};
}

MovedCot move_cotangent(const FatGraph& g, const CotangentVector& cv, int edge, Lambda l) {
    check_flippable(g, edge);
    require_same_graph(g.fingerprint(), cv.graph_fp, "move_cotangent");
    auto [post, rec] = g.whitehead(edge);
    const auto pi = wp_coefficients(g);
    const int E = g.edge_count();
    double ya = 0;
    for (int b = 0; b < E; ++b) ya += pi[edge][b] * cv.p[b];
    const RNum za(cv.x[edge], ya, l);
    require_invertible_log_arg(g, edge, za);
    const RNum lp = log1p_exp(za), lm = log1p_exp(-za);

    CotangentVector out = cv;
    out.x[g.edge_of(rec.hB)] += lp.re;
    out.x[g.edge_of(rec.hD)] += lp.re;
    out.x[g.edge_of(rec.hG)] -= lm.re;
    out.x[g.edge_of(rec.hE)] -= lm.re;
    out.x[edge] = -cv.x[edge];
    out.p[edge] = -cv.p[edge] + cv.p[g.edge_of(rec.hG)] + cv.p[g.edge_of(rec.hE)] + lp.im;
    out.graph_fp = post.fingerprint();
    return {std::move(post), std::move(out), rec};
}

double hamiltonian_H(double x) { return 0.25 * x * x + li2_negexp(x); }

double hamiltonian_H_deriv(double x) { return 0.5 * x - softplus(x); }

double im_H_lambda(const RNum& z) {
    const double x = z.re, y = z.im;
    switch (z.lambda) {
        case Lambda::Zero:
            return 0.5 * x * y - y * softplus(x);
        case Lambda::Minus:
            return 0.5 * x * y + 0.5 * (li2_negexp(x + y) - li2_negexp(x - y));
        case Lambda::Plus: {
            const std::complex<double> arg = -std::exp(std::complex<double>(x, y));
            return 0.5 * x * y + std::imag(li2_complex(arg));
        }
    }
    throw std::logic_error("im_H_lambda: unknown lambda");
}

// ---------------------------------------------------------------------------
// A/B decomposition.
// ---------------------------------------------------------------------------

ShearVector apply_A_x(const FatGraph& g, const ShearVector& x, int edge) {
    const MoveRecord rec = g.neighbor_frame(edge);
    const double xa = x.x[edge];
    ShearVector out = x;
    for (int h : {rec.hB, rec.hG, rec.hD, rec.hE}) out.x[g.edge_of(h)] += 0.5 * xa;
    out.x[edge] = -xa;
    return out;
}

ShearVector apply_B_x(const FatGraph& g, const ShearVector& x, int edge) {
    g.neighbor_frame(edge);   // loop check
    const auto pi = wp_coefficients(g);
    const double disp = hamiltonian_H_deriv(x.x[edge]);
    ShearVector out = x;
    for (int z = 0; z < g.edge_count(); ++z) out.x[z] += pi[z][edge] * disp;
    return out;
}

GenShearVector apply_A_z(const FatGraph& g, const GenShearVector& z, int edge) {
    const MoveRecord rec = g.neighbor_frame(edge);
    const RNum za = z.z[edge];
    GenShearVector out = z;
    for (int h : {rec.hB, rec.hG, rec.hD, rec.hE})
        out.z[g.edge_of(h)] = out.z[g.edge_of(h)] + 0.5 * za;
    out.z[edge] = -za;
    return out;
}

GenShearVector apply_B_z(const FatGraph& g, const GenShearVector& z, int edge) {
    g.neighbor_frame(edge);
    const auto pi = wp_coefficients(g);
    const RNum za = z.z[edge];
    const RNum disp = 0.5 * za - log1p_exp(za);
    GenShearVector out = z;
    for (int t = 0; t < g.edge_count(); ++t)
        out.z[t] = out.z[t] + static_cast<double>(pi[t][edge]) * disp;
    return out;
}

CotangentVector apply_A_cot(const FatGraph& g, const CotangentVector& cv, int edge) {
    const MoveRecord rec = g.neighbor_frame(edge);
    CotangentVector out = cv;
    const double xa = cv.x[edge];
    double psum = 0;
    for (int h : {rec.hB, rec.hG, rec.hD, rec.hE}) {
        out.x[g.edge_of(h)] += 0.5 * xa;
        psum += cv.p[g.edge_of(h)];
    }
    out.x[edge] = -xa;
    out.p[edge] = -cv.p[edge] + 0.5 * psum;
    return out;
}

CotangentVector apply_B_cot(const FatGraph& g, const CotangentVector& cv, int edge, Lambda l) {
    g.neighbor_frame(edge);
    const auto pi = wp_coefficients(g);
    const int E = g.edge_count();
    double ya = 0;
    for (int b = 0; b < E; ++b) ya += pi[edge][b] * cv.p[b];
    const RNum za(cv.x[edge], ya, l);
    const RNum disp = 0.5 * za - log1p_exp(za);
    CotangentVector out = cv;
    for (int t = 0; t < E; ++t) out.x[t] += pi[t][edge] * disp.re;
    out.p[edge] += disp.im;
    return out;
}

DMat a_jacobian_x(const FatGraph& g, int edge) {
    const MoveRecord rec = g.neighbor_frame(edge);
    const int E = g.edge_count();
    DMat j = dmat(E, E);
    for (int i = 0; i < E; ++i) j[i][i] = 1.0;
    j[edge][edge] = -1.0;
    for (int h : {rec.hB, rec.hG, rec.hD, rec.hE}) j[g.edge_of(h)][edge] += 0.5;
    return j;
}

DMat a_jacobian_cot(const FatGraph& g, int edge) {
    const MoveRecord rec = g.neighbor_frame(edge);
    const int E = g.edge_count();
    DMat j = dmat(2 * E, 2 * E);
    for (int i = 0; i < 2 * E; ++i) j[i][i] = 1.0;
    j[edge][edge] = -1.0;
    j[E + edge][E + edge] = -1.0;
    for (int h : {rec.hB, rec.hG, rec.hD, rec.hE}) {
        j[g.edge_of(h)][edge] += 0.5;
        j[E + edge][E + g.edge_of(h)] += 0.5;
    }
    return j;
}

bool a_pushforward_wp_exact(const FatGraph& g, int edge) {
    const DMat j = a_jacobian_x(g, edge);
    const auto pre = wp_coefficients(g);
    const auto post = wp_coefficients(g.whitehead(edge).first);
    const int E = g.edge_count();
    DMat p = dmat(E, E);
    for (int i = 0; i < E; ++i)
        for (int k = 0; k < E; ++k) p[i][k] = pre[i][k];
    const DMat pushed = matmul(j, matmul(p, transpose(j)));
    for (int i = 0; i < E; ++i)
        for (int k = 0; k < E; ++k)
            if (pushed[i][k] != static_cast<double>(post[i][k])) return false;
    return true;
}

bool a_pushforward_cot_exact(const FatGraph& g, int edge) {
    const DMat j = a_jacobian_cot(g, edge);
    const int E = g.edge_count();
    Bivector cot{BivectorKind::CotangentBundle, E, {}};
    const DMat c = coefficient_matrix(cot);
    const DMat pushed = matmul(j, matmul(c, transpose(j)));
    for (int i = 0; i < 2 * E; ++i)
        for (int k = 0; k < 2 * E; ++k)
            if (pushed[i][k] != c[i][k]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Relation suite.
// ---------------------------------------------------------------------------

std::vector<int> flippable_edges(const FatGraph& g) {
    std::vector<int> out;
    for (int e = 0; e < g.edge_count(); ++e)
        if (!g.is_loop(e)) out.push_back(e);
    return out;
}

namespace {

std::pair<int, int> edge_endpoints(const FatGraph& g, int e) {
    const auto& hh = g.half_edges_of(e);
    return {g.vertex_of(hh[0]), g.vertex_of(hh[1])};
}

int shared_vertices(const FatGraph& g, int e1, int e2) {
    auto [a, b] = edge_endpoints(g, e1);
    auto [c, d] = edge_endpoints(g, e2);
    int n = 0;
    n += (a == c) + (a == d);
    n += (b == c) + (b == d);
    return n;
}

} // namespace

std::vector<std::pair<int, int>> disjoint_edge_pairs(const FatGraph& g) {
    std::vector<std::pair<int, int>> out;
    const auto fl = flippable_edges(g);
    for (std::size_t i = 0; i < fl.size(); ++i)
        for (std::size_t j = i + 1; j < fl.size(); ++j)
            if (shared_vertices(g, fl[i], fl[j]) == 0) out.emplace_back(fl[i], fl[j]);
    return out;
}

std::vector<std::pair<int, int>> pentagon_edge_pairs(const FatGraph& g) {
    std::vector<std::pair<int, int>> out;
    const auto fl = flippable_edges(g);
    for (std::size_t i = 0; i < fl.size(); ++i)
        for (std::size_t j = 0; j < fl.size(); ++j)
            if (i != j && shared_vertices(g, fl[i], fl[j]) == 1) out.emplace_back(fl[i], fl[j]);
    return out;
}

namespace {

// One value bundle per space so the relation checks share a code path.
struct Bundle {
    Space space;
    Lambda lambda = Lambda::Zero;
    ShearVector x;
    LamVector w;
    GenShearVector z;
    CotangentVector cv;
};

Bundle sample_bundle(const FatGraph& g, Space space, Lambda l, std::uint64_t seed) {
    Rng rng(seed);
    const int E = g.edge_count();
    Bundle b;
    b.space = space;
    b.lambda = l;
    auto box = [&rng](double s) { return s * (2.0 * rng.uniform() - 1.0); };
    switch (space) {
        case Space::Teich:
            b.x.graph_fp = g.fingerprint();
            b.x.x.resize(E);
            for (double& v : b.x.x) v = box(2.0);
            break;
        case Space::Lamination:
            b.x.graph_fp = g.fingerprint();
            b.x.x.resize(E);
            for (double& v : b.x.x) v = box(2.0);
            b.w.graph_fp = g.fingerprint();
            b.w.lambda = l;
            for (int e = 0; e < E; ++e) b.w.w.emplace_back(box(1.0), box(1.0), l);
            break;
        case Space::Spacetime: {
            b.z.graph_fp = g.fingerprint();
            b.z.lambda = l;
            for (int e = 0; e < E; ++e) b.z.z.emplace_back(box(2.0), box(1.0), l);
            break;
        }
        case Space::Cotangent: {
            b.cv.graph_fp = g.fingerprint();
            b.cv.x.resize(E);
            b.cv.p.resize(E);
            const double pbox = l == Lambda::Plus ? 0.2 : 0.5;
            for (double& v : b.cv.x) v = box(2.0);
            for (double& v : b.cv.p) v = box(pbox);
            break;
        }
    }
    return b;
}

std::pair<FatGraph, Bundle> apply_move(const FatGraph& g, const Bundle& b, int edge) {
    Bundle out = b;
    switch (b.space) {
        case Space::Teich: {
            auto m = move_x(g, b.x, edge);
            out.x = std::move(m.x);
            return {std::move(m.graph), std::move(out)};
        }
        case Space::Lamination: {
            auto m = move_lam(g, b.x, b.w, edge);
            out.x = std::move(m.x);
            out.w = std::move(m.w);
            return {std::move(m.graph), std::move(out)};
        }
        case Space::Spacetime: {
            auto m = move_z(g, b.z, edge);
            out.z = std::move(m.z);
            return {std::move(m.graph), std::move(out)};
        }
        case Space::Cotangent: {
            auto m = move_cotangent(g, b.cv, edge, b.lambda);
            out.cv = std::move(m.cv);
            return {std::move(m.graph), std::move(out)};
        }
    }
    throw std::logic_error("apply_move: unknown space");
}

// max-abs distance, comparing the value attached to each label
double bundle_distance(const Bundle& a, const Bundle& b, const std::vector<int>& perm) {
    double d = 0;
    auto upd = [&d](double v) { d = std::max(d, std::abs(v)); };
    const std::size_t E = perm.size();
    for (std::size_t e = 0; e < E; ++e) {
        const int f = perm[e];
        switch (a.space) {
            case Space::Teich:
                upd(a.x.x[e] - b.x.x[f]);
                break;
            case Space::Lamination:
                upd(a.x.x[e] - b.x.x[f]);
                upd(abs_max(a.w.w[e] - b.w.w[f]));
                break;
            case Space::Spacetime:
                upd(abs_max(a.z.z[e] - b.z.z[f]));
                break;
            case Space::Cotangent:
                upd(a.cv.x[e] - b.cv.x[f]);
                upd(a.cv.p[e] - b.cv.p[f]);
                break;
        }
    }
    return d;
}

std::vector<int> identity_perm(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

} // namespace

double RelationReport::worst() const {
    double w = std::max(involutivity, naturality);
    if (commutativity >= 0) w = std::max(w, commutativity);
    if (pentagon >= 0) w = std::max(w, pentagon);
    return w;
}

RelationReport relation_suite(const FatGraph& g, Space space, Lambda lambda, int samples,
                              std::uint64_t seed) {
    RelationReport rep;
    rep.samples = samples;
    const auto fl = flippable_edges(g);
    if (fl.empty()) throw MoveError("relation_suite: graph has no flippable edge");
    const auto disj = disjoint_edge_pairs(g);
    const auto pent = pentagon_edge_pairs(g);
    if (disj.empty())
        rep.notes.push_back("commutativity skipped: no disjoint flippable edge pair");
    if (pent.empty())
        rep.notes.push_back("pentagon skipped: no edge pair sharing exactly one vertex");

    const auto idp = identity_perm(g.edge_count());
    std::vector<double> inv_r(samples, 0), nat_r(samples, 0), com_r(samples, -1),
        pen_r(samples, -1);
    std::vector<std::string> errors(samples);

    parallel_for(samples, [&](int s) {
        try {
            Rng pick = Rng::child(seed, 1000003ULL * s);
            const Bundle b0 = sample_bundle(g, space, lambda, seed + 7919ULL * s);

            // involutivity
            {
                const int e = fl[pick.below(fl.size())];
                auto [g1, b1] = apply_move(g, b0, e);
                auto [g2, b2] = apply_move(g1, b1, e);
                if (!FatGraph::isomorphic_labeled(g, g2))
                    throw MoveError("involutivity: graphs not isomorphic");
                inv_r[s] = bundle_distance(b0, b2, idp);
            }

            // naturality: relabeling commutes with moving the same physical edge
            {
                const int e = fl[pick.below(fl.size())];
                const int l1 = static_cast<int>(pick.below(g.edge_count()));
                int l2 = static_cast<int>(pick.below(g.edge_count()));
                if (l2 == l1) l2 = (l1 + 1) % g.edge_count();
                const FatGraph gs = g.with_labels_swapped(g.label(l1), g.label(l2));
                Bundle bs = b0;
                bs.x.graph_fp = bs.w.graph_fp = bs.z.graph_fp = bs.cv.graph_fp = gs.fingerprint();
                auto [ga, ba] = apply_move(gs, bs, e);
                auto [gb, bb] = apply_move(g, b0, e);
                const FatGraph gbs = gb.with_labels_swapped(gb.label(l1), gb.label(l2));
                if (ga.fingerprint() != gbs.fingerprint())
                    throw MoveError("naturality: graphs differ");
                nat_r[s] = bundle_distance(ba, bb, idp);
            }

            // commutativity on a disjoint pair
            if (!disj.empty()) {
                const auto [e1, e2] = disj[pick.below(disj.size())];
                auto [ga1, ba1] = apply_move(g, b0, e1);
                auto [ga2, ba2] = apply_move(ga1, ba1, e2);
                auto [gb1, bb1] = apply_move(g, b0, e2);
                auto [gb2, bb2] = apply_move(gb1, bb1, e1);
                if (ga2.fingerprint() != gb2.fingerprint())
                    throw MoveError("commutativity: graphs differ");
                com_r[s] = bundle_distance(ba2, bb2, idp);
            }

            // pentagon: five alternating moves followed by the transposition
            if (!pent.empty()) {
                const auto [ea, eb] = pent[pick.below(pent.size())];
                FatGraph cur = g;
                Bundle bc = b0;
                for (int step = 0; step < 5; ++step) {
                    const int tgt = (step % 2 == 0) ? ea : eb;
                    auto [gn, bn] = apply_move(cur, bc, tgt);
                    cur = std::move(gn);
                    bc = std::move(bn);
                }
                const FatGraph swapped = g.with_labels_swapped(g.label(ea), g.label(eb));
                if (!FatGraph::isomorphic_labeled(cur, swapped))
                    throw MoveError("pentagon: final graph not the transposed one");
                auto perm = identity_perm(g.edge_count());
                perm[ea] = eb;
                perm[eb] = ea;
                pen_r[s] = bundle_distance(bc, b0, perm);
            }
        } catch (const std::exception& ex) {
            errors[s] = ex.what();
        }
    });

    for (int s = 0; s < samples; ++s) {
        if (!errors[s].empty()) throw MoveError("relation_suite sample " + std::to_string(s) +
                                                ": " + errors[s]);
        rep.involutivity = std::max(rep.involutivity, inv_r[s]);
        rep.naturality = std::max(rep.naturality, nat_r[s]);
        if (com_r[s] >= 0) rep.commutativity = std::max(rep.commutativity, com_r[s]);
        if (pen_r[s] >= 0) rep.pentagon = std::max(rep.pentagon, pen_r[s]);
    }
    return rep;
}

int worker_count() {
    if (const char* env = std::getenv("HOLOSHEAR_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

void parallel_for(int n, const std::function<void(int)>& body) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace holoshear

#include "holoshear/acceptance.hpp"

#include "holoshear/holonomy.hpp"
#include "holoshear/moves.hpp"
#include "holoshear/poisson.hpp"
#include "holoshear/rng.hpp"
#include "holoshear/shipped_graphs.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace holoshear {

namespace {

const Lambda kAll[] = {Lambda::Minus, Lambda::Zero, Lambda::Plus};

EdgePath random_closed_path(const FatGraph& g, Rng& rng, int maxlen = 10, int start = -1) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        const int h0 = start >= 0 ? start : static_cast<int>(rng.below(g.half_edge_count()));
        std::vector<int> tails{h0};
        for (int step = 0; step < maxlen; ++step) {
            const int in = g.sigma(tails.back());
            const int next = rng.below(2) ? g.nu(in) : g.nu_inv(in);
            if (static_cast<int>(tails.size()) >= 2 &&
                g.vertex_of(g.sigma(tails.back())) == g.vertex_of(h0) &&
                h0 != g.sigma(tails.back())) {
                EdgePath p{tails};
                try {
                    g.validate_path(p);
                    return p;
                } catch (const PathError&) {
                }
            }
            tails.push_back(next);
        }
    }
    throw std::runtime_error("random_closed_path: no closed path found");
}

// a criterion can have several sub-checks with their own tolerances; the
// reported residual/tol pair is the sub-check closest to (or past) failure
struct Part {
    std::string name;
    double residual;
    double tol;
};

struct Checker {
    const AcceptanceConfig& cfg;
    AcceptanceReport& rep;

    void add(int index, const std::string& name, const std::vector<Part>& parts,
             const std::string& note = "") {
        CriterionResult r;
        r.index = index;
        r.name = name;
        bool pass = true;
        bool tolerance_only = true;
        const Part* worst = nullptr;
        double worst_ratio = -1;
        std::ostringstream detail;
        for (const auto& p : parts) {
            const double tol_eff = cfg.tol_override.value_or(p.tol);
            const bool ok = p.residual <= tol_eff;
            pass = pass && ok;
            if (!ok && p.residual > p.tol) tolerance_only = false;
            const double ratio = tol_eff > 0 ? p.residual / tol_eff
                                             : (p.residual == 0 ? 0 : std::numeric_limits<double>::infinity());
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                worst = &p;
            }
            detail << p.name << "=" << p.residual << " ";
        }
        if (!note.empty()) detail << "| " << note;
        r.pass = pass;
        r.residual = worst ? worst->residual : 0;
        r.default_tol = worst ? worst->tol : 0;
        r.tol = cfg.tol_override.value_or(r.default_tol);
        if (!pass) r.failure_kind = tolerance_only ? "tolerance" : "logic";
        r.detail = detail.str();
        rep.results.push_back(std::move(r));
    }
};

// 1. pentagon relation for the shear-bending move
void criterion_pentagon(Checker& ck) {
    double worst = 0;
    std::ostringstream note;
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        const auto pairs = pentagon_edge_pairs(g);
        if (pairs.empty()) {
            note << name << " skipped (no adjacent pair); ";
            continue;
        }
        const ConstraintMap cm(g);
        for (Lambda l : kAll) {
            std::vector<double> res(ck.cfg.pentagon_samples, 0.0);
            std::vector<std::string> errs(ck.cfg.pentagon_samples);
            parallel_for(ck.cfg.pentagon_samples, [&](int s) {
                try {
                    Rng pick = Rng::child(ck.cfg.seed, 90001ULL * s + static_cast<int>(l) + 2);
                    const auto [ea, eb] = pairs[pick.below(pairs.size())];
                    const GenShearVector z0 = cm.sample_box(
                        ck.cfg.seed + 13ULL * s + static_cast<int>(l) + 1, l, 2.0, 1.0);
                    FatGraph cur = g;
                    GenShearVector zc = z0;
                    for (int step = 0; step < 5; ++step) {
                        auto m = move_z(cur, zc, step % 2 == 0 ? ea : eb);
                        cur = std::move(m.graph);
                        zc = std::move(m.z);
                    }
                    if (!FatGraph::isomorphic_labeled(
                            cur, g.with_labels_swapped(g.label(ea), g.label(eb))))
                        throw MoveError("pentagon: final graph is not the transposed one");
                    double d = 0;
                    for (int a = 0; a < g.edge_count(); ++a) {
                        const int b = a == ea ? eb : (a == eb ? ea : a);
                        d = std::max(d, abs_max(zc.z[a] - z0.z[b]));
                    }
                    res[s] = d;
                } catch (const std::exception& ex) {
                    errs[s] = ex.what();
                }
            });
            for (int s = 0; s < ck.cfg.pentagon_samples; ++s) {
                if (!errs[s].empty()) throw MoveError("pentagon sample failed: " + errs[s]);
                worst = std::max(worst, res[s]);
            }
        }
        note << name << " ok; ";
    }
    ck.add(1, "pentagon relation (shear-bending move)",
           {{"max_coord_residual", worst, 1e-9}}, note.str());
}

// 2. involutivity / commutativity / naturality across coordinate systems
void criterion_relations(Checker& ck) {
    double inv = 0, nat = 0, com = 0;
    bool com_seen = false;
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        for (Space s : {Space::Teich, Space::Lamination, Space::Spacetime, Space::Cotangent})
            for (Lambda l : kAll) {
                const auto r = relation_suite(g, s, l, ck.cfg.relation_samples,
                                              ck.cfg.seed + static_cast<int>(l) + 31);
                inv = std::max(inv, r.involutivity);
                nat = std::max(nat, r.naturality);
                if (r.commutativity >= 0) {
                    com_seen = true;
                    com = std::max(com, r.commutativity);
                }
            }
    }
    ck.add(2, "involutivity/commutativity/naturality",
           {{"involutivity", inv, 1e-10},
            {"commutativity", com_seen ? com : 1.0, 1e-10},
            {"naturality", nat, 1e-10}},
           "4 spaces x 3 curvatures x 4 graphs");
}

// 3. moves preserve the face constraints and gauge orbits
void criterion_constraints(Checker& ck) {
    double worst_c = 0, worst_gauge = 0;
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        const ConstraintMap cm(g);
        const auto edges = flippable_edges(g);
        for (int t = 0; t < ck.cfg.constraint_samples; ++t) {
            Rng pick = Rng::child(ck.cfg.seed, 70001ULL * t + 5);
            const int e = edges[pick.below(edges.size())];

            const ShearVector x = cm.sample_teich(ck.cfg.seed + 101ULL * t);
            auto mx = move_x(g, x, e);
            worst_c = std::max(worst_c, ConstraintMap(mx.graph).max_residual(mx.x));

            for (Lambda l : kAll) {
                const GenShearVector z = cm.sample_spacetime(
                    ck.cfg.seed + 211ULL * t + static_cast<int>(l), l, 1.0, 0.6);
                auto mz = move_z(g, z, e);
                worst_c = std::max(worst_c, ConstraintMap(mz.graph).max_residual(mz.z));

                const LamVector w = cm.sample_lamination(
                    ck.cfg.seed + 307ULL * t + static_cast<int>(l), l, 0.7, 0.5);
                auto ml = move_lam(g, x, w, e);
                const ConstraintMap cmp(ml.graph);
                worst_c = std::max({worst_c, cmp.max_residual(ml.x), cmp.max_residual(ml.w)});

                CotangentVector cv = cm.sample_cotangent(ck.cfg.seed + 401ULL * t);
                auto mc = move_cotangent(g, cv, e, l);
                const ConstraintMap cmc(mc.graph);
                ShearVector xb{mc.cv.x, mc.graph.fingerprint()};
                worst_c = std::max(worst_c, cmc.max_residual(xb));

                const auto corr = g.face_correspondence(mc.record, mc.graph);
                const double q = 0.37;
                for (int i = 0; i < cm.faces(); ++i) {
                    CotangentVector shifted = cv;
                    for (int a = 0; a < g.edge_count(); ++a)
                        shifted.p[a] += q * cm.theta()[i][a];
                    auto ms = move_cotangent(g, shifted, e, l);
                    for (int a = 0; a < g.edge_count(); ++a) {
                        const double expect = mc.cv.p[a] + q * cmc.theta()[corr[i]][a];
                        worst_gauge = std::max(worst_gauge, std::abs(ms.cv.p[a] - expect));
                        worst_gauge = std::max(worst_gauge, std::abs(ms.cv.x[a] - mc.cv.x[a]));
                    }
                }
            }
        }
    }
    ck.add(3, "constraint preservation under moves",
           {{"constraint_residual", worst_c, 1e-10}, {"gauge_orbit_shift", worst_gauge, 1e-10}},
           "all graphs, all curvatures, all spaces");
}

// 4. theta . pi_WP = 0 in exact integer arithmetic
void criterion_casimir(Checker& ck) {
    bool ok = true;
    for (const auto& name : shipped_graph_names())
        ok = ok && constraints_casimir_exact(shipped_graph(name));
    ck.add(4, "face constraints Casimir (exact integers)", {{"theta_pi_zero", ok ? 0.0 : 1.0, 0.0}},
           "theta . pi_WP = 0 per shipped graph");
}

// 5. cotangent symplectomorphism identities, exact
void criterion_symplectomorphism(Checker& ck) {
    bool push = true, ann = true;
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        push = push && pi_sharp_pushforward_identity(g);
        ann = ann && pi_sharp_kills_constraint_differentials(g);
    }
    ck.add(5, "pi_sharp pushforward and annihilator (exact integers)",
           {{"jacobian_identity", push ? 0.0 : 1.0, 0.0},
            {"constraint_differentials", ann ? 0.0 : 1.0, 0.0}},
           "J pi_T* J^T = -2 pi_Lambda; pi theta^T = 0");
}

// 6. moves are Poisson maps (finite-difference Jacobians)
void criterion_poisson_moves(Checker& ck) {
    double worst = 0;
    const double h = 1e-6;
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        const ConstraintMap cm(g);
        const auto edges = flippable_edges(g);
        const int E = g.edge_count(), n = 2 * E;
        for (Lambda l : kAll) {
            std::vector<double> res(ck.cfg.poisson_samples, 0.0);
            parallel_for(ck.cfg.poisson_samples, [&](int t) {
                Rng pick = Rng::child(ck.cfg.seed, 50021ULL * t + static_cast<int>(l) + 7);
                const int e = edges[pick.below(edges.size())];
                double local = 0;

                {
                    const GenShearVector z = cm.sample_box(
                        ck.cfg.seed + 503ULL * t + static_cast<int>(l), l, 1.0, 0.5);
                    const auto at = flatten(z);
                    DMat jac = dmat(n, n);
                    for (int j = 0; j < n; ++j) {
                        auto vp = at, vm = at;
                        vp[j] += h;
                        vm[j] -= h;
                        const auto fp =
                            flatten(move_z(g, unflatten_gen(vp, l, g.fingerprint()), e).z);
                        const auto fm =
                            flatten(move_z(g, unflatten_gen(vm, l, g.fingerprint()), e).z);
                        for (int i = 0; i < n; ++i) jac[i][j] = (fp[i] - fm[i]) / (2 * h);
                    }
                    const DMat cpre =
                        coefficient_matrix(make_bivector(g, BivectorKind::Gravitational));
                    const DMat cpost = coefficient_matrix(
                        make_bivector(g.whitehead(e).first, BivectorKind::Gravitational));
                    const DMat pushed = matmul(jac, matmul(cpre, transpose(jac)));
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            local = std::max(local, std::abs(pushed[i][j] - cpost[i][j]));
                }

                {
                    const CotangentVector cv = cm.sample_cotangent_box(
                        ck.cfg.seed + 701ULL * t + static_cast<int>(l), 1.0,
                        l == Lambda::Plus ? 0.2 : 0.5);
                    const auto at = flatten(cv);
                    DMat jac = dmat(n, n);
                    for (int j = 0; j < n; ++j) {
                        auto vp = at, vm = at;
                        vp[j] += h;
                        vm[j] -= h;
                        const auto fp = flatten(
                            move_cotangent(g, unflatten_cot(vp, g.fingerprint()), e, l).cv);
                        const auto fm = flatten(
                            move_cotangent(g, unflatten_cot(vm, g.fingerprint()), e, l).cv);
                        for (int i = 0; i < n; ++i) jac[i][j] = (fp[i] - fm[i]) / (2 * h);
                    }
                    Bivector cot{BivectorKind::CotangentBundle, E, {}};
                    const DMat c = coefficient_matrix(cot);
                    const DMat pushed = matmul(jac, matmul(c, transpose(jac)));
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j)
                            local = std::max(local, std::abs(pushed[i][j] - c[i][j]));
                }
                res[t] = local;
            });
            for (double d : res) worst = std::max(worst, d);
        }
    }
    ck.add(6, "moves are Poisson maps (FD Jacobians)",
           {{"pushforward_residual", worst, 1e-5}},
           "move_z vs gravitational bivector, cotangent move vs canonical");
}

// 7. Goldman bracket two ways on the punctured-torus generator pair
void criterion_goldman(Checker& ck) {
    const FatGraph g = shipped_graph("torus_1");
    const ConstraintMap cm(g);
    const EdgePath a{{0, 4}}, b{{0, 5}};
    double worst = 0;
    for (Lambda l : kAll) {
        std::vector<double> res(ck.cfg.goldman_samples, 0.0);
        parallel_for(ck.cfg.goldman_samples, [&](int t) {
            const GenShearVector z =
                cm.sample_box(ck.cfg.seed + 1009ULL * t + static_cast<int>(l), l, 0.8, 0.4);
            res[t] = goldman_bracket_traces(g, a, b, z).discrepancy();
        });
        for (double d : res) worst = std::max(worst, d);
    }
    ck.add(7, "Goldman bracket two-way agreement", {{"route_discrepancy", worst, 1e-8}},
           "gradient contraction vs based segment sum, torus generators, 3 curvatures");
}

// 8. face parabolicity and move-invariance of traces
void criterion_traces(Checker& ck) {
    double worst_par = 0, worst_tr = 0;
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        const ConstraintMap cm(g);
        const auto edges = flippable_edges(g);
        for (Lambda l : kAll) {
            for (int t = 0; t < ck.cfg.trace_samples; ++t) {
                const GenShearVector z = cm.sample_spacetime(
                    ck.cfg.seed + 1301ULL * t + static_cast<int>(l), l, 0.8, 0.4);
                for (int i = 0; i < g.face_count(); ++i) {
                    const RNum tr = trace(holonomy(g, g.face_boundary_path(i), z));
                    worst_par = std::max(worst_par, std::abs(std::abs(tr.re) - 2.0));
                    worst_par = std::max(worst_par, std::abs(tr.im));
                }
                Rng pick = Rng::child(ck.cfg.seed, 1409ULL * t + static_cast<int>(l) + 3);
                const EdgePath p = random_closed_path(g, pick);
                const int e = edges[pick.below(edges.size())];
                const RNum tr0 = trace(holonomy(g, p, z));
                auto mz = move_z(g, z, e);
                const EdgePath q = g.transport_path(p, mz.record, mz.graph);
                const RNum tr1 = trace(holonomy(mz.graph, q, mz.z));
                worst_tr = std::max(worst_tr, abs_max(tr1 - tr0));
            }
        }
    }
    ck.add(8, "face parabolicity and trace invariance",
           {{"parabolicity", worst_par, 1e-10}, {"transported_traces", worst_tr, 1e-9}},
           "in-constraint samples, random closed paths");
}

// 9. deformation cocycle laws
void criterion_cocycles(Checker& ck) {
    // The absolute 1e-10 comparison runs on the punctured-torus generator
    // pair, where the matrices stay O(10); longer random paths conjugate by
    // exponentially large frames and are covered by relative-error unit
    // tests instead.
    double worst_abs = 0;

    {
        const FatGraph g = shipped_graph("torus_1");
        const ConstraintMap cm(g);
        const EdgePath a{{0, 4}}, b{{0, 5}};
        const EdgePath ab = g.splice(a, b);
        std::vector<double> res(ck.cfg.cocycle_samples, 0.0);
        parallel_for(ck.cfg.cocycle_samples, [&](int t) {
            const ShearVector x = cm.sample_teich(ck.cfg.seed + 1601ULL * t, 0.8);
            const ShearVector x2 = cm.sample_teich(ck.cfg.seed + 1709ULL * t + 1, 0.8);
            double local = 0;
            for (Lambda l : kAll) {
                const Mat2 za = earthquake_cocycle(g, a, x, x2, l);
                const Mat2 zb = earthquake_cocycle(g, b, x, x2, l);
                const Mat2 zab = earthquake_cocycle(g, ab, x, x2, l);
                const Mat2 ra = holonomy(g, a, x, l);

                const Mat2 lhs = za * ra;
                const Mat2 rhs = holonomy(g, a, x2, l);
                local = std::max(local, std::min(distance(lhs, rhs), distance(lhs, -1.0 * rhs)));
                const Mat2 comp = za * (ra * zb * inverse_unit_det(ra));
                local = std::max(local, std::min(distance(zab, comp), distance(zab, -1.0 * comp)));

                const LamVector w = cm.sample_lamination(
                    ck.cfg.seed + 1801ULL * t + static_cast<int>(l), l, 0.5, 0.4);
                const Mat2 zg = grafting_cocycle(g, a, x, w);
                const Mat2 lhg = zg * ra;
                const Mat2 rhg = holonomy(g, a, combine(x, w));
                local = std::max(local, std::min(distance(lhg, rhg), distance(lhg, -1.0 * rhg)));
            }
            res[t] = local;
        });
        for (double d : res) worst_abs = std::max(worst_abs, d);
    }

    ck.add(9, "earthquake/grafting cocycle laws", {{"cocycle_residual", worst_abs, 1e-10}},
           "Z rho = rho' and composite identity, torus generator pair and splice");
}

// 10. Hamiltonian decomposition of the moves
void criterion_decomposition(Checker& ck) {
    double worst_ab = 0;
    bool exact_ok = true;
    for (const auto& name : shipped_graph_names()) {
        const FatGraph g = shipped_graph(name);
        const ConstraintMap cm(g);
        const auto edges = flippable_edges(g);
        for (int e : edges)
            exact_ok = exact_ok && a_pushforward_wp_exact(g, e) && a_pushforward_cot_exact(g, e);
        for (int t = 0; t < 10; ++t) {
            Rng pick = Rng::child(ck.cfg.seed, 1901ULL * t + 13);
            const int e = edges[pick.below(edges.size())];
            const ShearVector x = cm.sample_teich(ck.cfg.seed + 2003ULL * t, 1.2);
            const ShearVector ab = apply_A_x(g, apply_B_x(g, x, e), e);
            const ShearVector w = move_x(g, x, e).x;
            for (int a = 0; a < g.edge_count(); ++a)
                worst_ab = std::max(worst_ab, std::abs(ab.x[a] - w.x[a]));
            for (Lambda l : kAll) {
                const GenShearVector z =
                    cm.sample_box(ck.cfg.seed + 2111ULL * t + static_cast<int>(l), l, 1.2, 0.6);
                const GenShearVector abz = apply_A_z(g, apply_B_z(g, z, e), e);
                const GenShearVector wz = move_z(g, z, e).z;
                for (int a = 0; a < g.edge_count(); ++a)
                    worst_ab = std::max(worst_ab, abs_max(abz.z[a] - wz.z[a]));
                const CotangentVector cv = cm.sample_cotangent_box(
                    ck.cfg.seed + 2203ULL * t + static_cast<int>(l), 1.0, 0.3);
                const CotangentVector abc = apply_A_cot(g, apply_B_cot(g, cv, e, l), e);
                const CotangentVector wc = move_cotangent(g, cv, e, l).cv;
                for (int a = 0; a < g.edge_count(); ++a) {
                    worst_ab = std::max(worst_ab, std::abs(abc.x[a] - wc.x[a]));
                    worst_ab = std::max(worst_ab, std::abs(abc.p[a] - wc.p[a]));
                }
            }
        }
    }

    double worst_h = 0;
    for (double x : {-2.5, -0.8, 0.0, 0.9, 2.2}) {
        const double h = 1e-6;
        const double fd = (hamiltonian_H(x + h) - hamiltonian_H(x - h)) / (2 * h);
        worst_h = std::max(worst_h, std::abs(fd - hamiltonian_H_deriv(x)));
    }
    for (Lambda l : kAll)
        for (double x : {-1.1, 0.4, 1.3})
            for (double y : {-0.8, 0.3, 0.9}) {
                const double h = 1e-6;
                const RNum z(x, y, l);
                const double dx =
                    (im_H_lambda(RNum(x + h, y, l)) - im_H_lambda(RNum(x - h, y, l))) / (2 * h);
                const double dy =
                    (im_H_lambda(RNum(x, y + h, l)) - im_H_lambda(RNum(x, y - h, l))) / (2 * h);
                const RNum expect = 0.5 * z - log1p_exp(z);
                worst_h = std::max(worst_h, std::abs(dx - expect.im));
                worst_h = std::max(worst_h, std::abs(dy - expect.re));
            }

    // H(0) against the alternating series oracle
    double oracle = 0;
    for (int k = 1; k < 100000000; ++k) {
        const double term = ((k % 2) ? -1.0 : 1.0) / (static_cast<double>(k) * k);
        oracle += term;
        if (std::abs(term) < 5e-17) break;
    }
    const double h0_err = std::abs(hamiltonian_H(0.0) - oracle);

    ck.add(10, "Hamiltonian decomposition of moves",
           {{"A_after_B_vs_move", worst_ab, 1e-10},
            {"bivector_pushforwards_exact", exact_ok ? 0.0 : 1.0, 0.0},
            {"derivative_checks", worst_h, 1e-5},
            {"H_at_zero_vs_series", h0_err, 1e-12}},
           "x, shear-bending and cotangent decompositions");
}

} // namespace

bool AcceptanceReport::all_pass() const {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

AcceptanceReport run_acceptance(const AcceptanceConfig& cfg) {
    AcceptanceReport rep;
    rep.seed = cfg.seed;
    Checker ck{cfg, rep};
    criterion_pentagon(ck);
    criterion_relations(ck);
    criterion_constraints(ck);
    criterion_casimir(ck);
    criterion_symplectomorphism(ck);
    criterion_poisson_moves(ck);
    criterion_goldman(ck);
    criterion_traces(ck);
    criterion_cocycles(ck);
    criterion_decomposition(ck);
    return rep;
}

std::string format_acceptance_lines(const AcceptanceReport& rep) {
    std::ostringstream out;
    for (const auto& r : rep.results) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.index << ". " << r.name
            << "  residual=" << r.residual << " tol=" << r.tol;
        if (!r.pass) out << " kind=" << r.failure_kind;
        if (!r.detail.empty()) out << "  [" << r.detail << "]";
        out << "\n";
    }
    out << (rep.all_pass() ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << " (seed " << rep.seed
        << ")\n";
    return out.str();
}

std::string acceptance_report_json(const AcceptanceReport& rep) {
    nlohmann::ordered_json j;
    j["seed"] = rep.seed;
    j["all_pass"] = rep.all_pass();
    auto& arr = j["criteria"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.results) {
        nlohmann::ordered_json c;
        c["index"] = r.index;
        c["name"] = r.name;
        c["pass"] = r.pass;
        c["residual"] = r.residual;
        c["tol"] = r.tol;
        c["default_tol"] = r.default_tol;
        if (!r.failure_kind.empty()) c["failure_kind"] = r.failure_kind;
        c["detail"] = r.detail;
        arr.push_back(std::move(c));
    }
    return j.dump(2);
}

} // namespace holoshear

#include "holoshear/holonomy.hpp"

namespace holoshear {

namespace {

Mat2 turn_matrix(const FatGraph& g, const EdgePath& p, int k, Lambda l) {
    return g.turn(p, k) == Turn::Left ? gen_L(l) : gen_R(l);
}

void check_bound(const FatGraph& g, std::uint64_t fp, const char* where) {
    require_same_graph(g.fingerprint(), fp, where);
}

} // namespace

Mat2 holonomy(const FatGraph& g, const EdgePath& p, const GenShearVector& z) {
    g.validate_path(p);
    check_bound(g, z.graph_fp, "holonomy");
    const int n = static_cast<int>(p.tails.size());
    Mat2 m = Mat2::identity(z.lambda);
    for (int k = 0; k < n; ++k)
        m = turn_matrix(g, p, k, z.lambda) * gen_E(z.z[g.edge_of(p.tails[k])]) * m;
    return m;
}

Mat2 holonomy(const FatGraph& g, const EdgePath& p, const ShearVector& x, Lambda l) {
    return holonomy(g, p, embed_real(x, l));
}

std::vector<Mat2> prefix_frames(const FatGraph& g, const EdgePath& p,
                                const GenShearVector& z) {
    g.validate_path(p);
    check_bound(g, z.graph_fp, "prefix_frames");
    const int n = static_cast<int>(p.tails.size());
    std::vector<Mat2> frames(n, Mat2::identity(z.lambda));
    frames[n - 1] = turn_matrix(g, p, n - 1, z.lambda);
    for (int k = n - 2; k >= 0; --k)
        frames[k] = frames[k + 1] * gen_E(z.z[g.edge_of(p.tails[k + 1])]) *
                    turn_matrix(g, p, k, z.lambda);
    return frames;
}

std::vector<LieVec> lievec_frames(const FatGraph& g, const EdgePath& p,
                                  const GenShearVector& z) {
    auto frames = prefix_frames(g, p, z);
    std::vector<LieVec> out;
    out.reserve(frames.size());
    const LieVec j1 = LieVec::basis_J(1, z.lambda);
    for (const Mat2& a : frames) out.push_back(ad_action(a, j1));
    return out;
}

Mat2 holonomy_based_at(const FatGraph& g, const EdgePath& p, const GenShearVector& z, int k) {
    const Mat2 rho = holonomy(g, p, z);
    const Mat2 a = prefix_frames(g, p, z)[k];
    return inverse_unit_det(a) * rho * a;
}

namespace {

Mat2 cocycle_product(const FatGraph& g, const EdgePath& p, const ShearVector& x,
                     const std::vector<RNum>& delta, Lambda l) {
    const int n = static_cast<int>(p.tails.size());
    const auto frames = prefix_frames(g, p, embed_real(x, l));
    Mat2 m = Mat2::identity(l);
    for (int k = 0; k < n; ++k) {
        const Mat2& a = frames[k];
        m = a * gen_E(delta[g.edge_of(p.tails[k])]) * inverse_unit_det(a) * m;
    }
    return m;
}

} // namespace

Mat2 earthquake_cocycle(const FatGraph& g, const EdgePath& p, const ShearVector& x,
                        const ShearVector& x2, Lambda l, bool strict,
                        const ConstraintMap* cm) {
    check_bound(g, x.graph_fp, "earthquake_cocycle");
    check_bound(g, x2.graph_fp, "earthquake_cocycle");
    if (strict && cm) {
        if (cm->max_residual(x) > 1e-9 || cm->max_residual(x2) > 1e-9)
            throw CoordsError("earthquake_cocycle: input off the constraint surface");
    }
    std::vector<RNum> delta;
    delta.reserve(x.x.size());
    for (std::size_t e = 0; e < x.x.size(); ++e) delta.push_back(RNum::real(x2.x[e] - x.x[e], l));
    return cocycle_product(g, p, x, delta, l);
}

Mat2 grafting_cocycle(const FatGraph& g, const EdgePath& p, const ShearVector& x,
                      const LamVector& w, bool strict, const ConstraintMap* cm) {
    check_bound(g, x.graph_fp, "grafting_cocycle");
    check_bound(g, w.graph_fp, "grafting_cocycle");
    if (strict && cm) {
        if (cm->max_residual(x) > 1e-9 || cm->max_residual(w) > 1e-9)
            throw CoordsError("grafting_cocycle: input off the constraint surface");
    }
    return cocycle_product(g, p, x, w.w, w.lambda);
}

} // namespace holoshear

#include "holoshear/coords.hpp"

#include "holoshear/rng.hpp"

#include <json.hpp>

#include <cmath>

namespace holoshear {

Space space_from_string(const std::string& s) {
    if (s == "teich" || s == "x") return Space::Teich;
    if (s == "lamination" || s == "lam" || s == "xw") return Space::Lamination;
    if (s == "spacetime" || s == "z") return Space::Spacetime;
    if (s == "cotangent" || s == "cot" || s == "xp") return Space::Cotangent;
    throw CoordsError("unknown space tag: " + s);
}

const char* space_name(Space s) {
    switch (s) {
        case Space::Teich: return "teich";
        case Space::Lamination: return "lamination";
        case Space::Spacetime: return "spacetime";
        case Space::Cotangent: return "cotangent";
    }
    return "?";
}

void require_same_graph(std::uint64_t a, std::uint64_t b, const char* where) {
    if (a != b)
        throw CoordsError(std::string(where) + ": coordinate vector bound to a different graph");
}

std::vector<double> GenShearVector::re() const {
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].re;
    return out;
}

std::vector<double> GenShearVector::im() const {
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i].im;
    return out;
}

GenShearVector embed_real(const ShearVector& xs, Lambda l) {
    GenShearVector g;
    g.lambda = l;
    g.graph_fp = xs.graph_fp;
    g.z.reserve(xs.x.size());
    for (double v : xs.x) g.z.push_back(RNum::real(v, l));
    return g;
}

GenShearVector combine(const ShearVector& xs, const LamVector& w) {
    require_same_graph(xs.graph_fp, w.graph_fp, "combine");
    if (xs.x.size() != w.w.size()) throw CoordsError("combine: size mismatch");
    GenShearVector g;
    g.lambda = w.lambda;
    g.graph_fp = xs.graph_fp;
    g.z.reserve(xs.x.size());
    for (std::size_t i = 0; i < xs.x.size(); ++i) g.z.push_back(w.w[i] + xs.x[i]);
    return g;
}

GenShearVector make_gen(std::vector<double> x, std::vector<double> y, Lambda l,
                        std::uint64_t fp) {
    if (x.size() != y.size()) throw CoordsError("make_gen: size mismatch");
    GenShearVector g;
    g.lambda = l;
    g.graph_fp = fp;
    g.z.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g.z.emplace_back(x[i], y[i], l);
    return g;
}

ConstraintMap::ConstraintMap(const FatGraph& g)
    : E_(g.edge_count()), F_(g.face_count()), fp_(g.fingerprint()) {
    theta_.assign(F_, std::vector<int>(E_, 0));
    for (int i = 0; i < F_; ++i) theta_[i] = g.faces()[i].multiplicity;
    tilde_ = theta_;
    build_projector();
}

void ConstraintMap::set_gauge(std::vector<std::vector<int>> tilde) {
    if (static_cast<int>(tilde.size()) != F_)
        throw CoordsError("gauge matrix must have one row per face");
    for (const auto& row : tilde)
        if (static_cast<int>(row.size()) != E_)
            throw CoordsError("gauge matrix row length must equal edge count");
    tilde_ = std::move(tilde);
}

void ConstraintMap::build_projector() {
    DMat th = dmat(F_, E_);
    for (int i = 0; i < F_; ++i)
        for (int a = 0; a < E_; ++a) th[i][a] = theta_[i][a];
    DMat gram = matmul(th, transpose(th));   // F x F
    if (!invertible(gram, 1e-9))
        throw CoordsError("constraint matrix is rank deficient");
    DMat gi = invert(gram);
    DMat proj = matmul(transpose(th), matmul(gi, th));   // E x E
    projector_ = dmat(E_, E_);
    for (int i = 0; i < E_; ++i)
        for (int j = 0; j < E_; ++j) projector_[i][j] = (i == j ? 1.0 : 0.0) - proj[i][j];
}

std::vector<double> ConstraintMap::residual(const ShearVector& v) const {
    require_same_graph(fp_, v.graph_fp, "residual");
    std::vector<double> r(F_, 0.0);
    for (int i = 0; i < F_; ++i)
        for (int a = 0; a < E_; ++a) r[i] += theta_[i][a] * v.x[a];
    return r;
}

std::vector<RNum> ConstraintMap::residual(const GenShearVector& v) const {
    require_same_graph(fp_, v.graph_fp, "residual");
    std::vector<RNum> r(F_, RNum::real(0, v.lambda));
    for (int i = 0; i < F_; ++i)
        for (int a = 0; a < E_; ++a) r[i] = r[i] + static_cast<double>(theta_[i][a]) * v.z[a];
    return r;
}

std::vector<RNum> ConstraintMap::residual(const LamVector& v) const {
    require_same_graph(fp_, v.graph_fp, "residual");
    std::vector<RNum> r(F_, RNum::real(0, v.lambda));
    for (int i = 0; i < F_; ++i)
        for (int a = 0; a < E_; ++a) r[i] = r[i] + static_cast<double>(theta_[i][a]) * v.w[a];
    return r;
}

std::vector<double> ConstraintMap::residual(const CotangentVector& v) const {
    require_same_graph(fp_, v.graph_fp, "residual");
    std::vector<double> r(2 * F_, 0.0);
    for (int i = 0; i < F_; ++i)
        for (int a = 0; a < E_; ++a) {
            r[i] += theta_[i][a] * v.x[a];
            r[F_ + i] += tilde_[i][a] * v.p[a];
        }
    return r;
}

double ConstraintMap::max_residual(const ShearVector& v) const {
    double m = 0;
    for (double r : residual(v)) m = std::max(m, std::abs(r));
    return m;
}

double ConstraintMap::max_residual(const GenShearVector& v) const {
    double m = 0;
    for (const RNum& r : residual(v)) m = std::max(m, abs_max(r));
    return m;
}

double ConstraintMap::max_residual(const LamVector& v) const {
    double m = 0;
    for (const RNum& r : residual(v)) m = std::max(m, abs_max(r));
    return m;
}

std::vector<std::vector<int>> ConstraintMap::dirac_matrix() const {
    std::vector<std::vector<int>> m(F_, std::vector<int>(F_, 0));
    for (int i = 0; i < F_; ++i)
        for (int j = 0; j < F_; ++j)
            for (int a = 0; a < E_; ++a) m[i][j] += tilde_[i][a] * theta_[j][a];
    return m;
}

bool ConstraintMap::gauge_admissible() const {
    auto m = dirac_matrix();
    DMat d = dmat(F_, F_);
    for (int i = 0; i < F_; ++i)
        for (int j = 0; j < F_; ++j) d[i][j] = m[i][j];
    return invertible(d, 1e-9);
}

bool ConstraintMap::full_row_rank() const {
    DMat th = dmat(F_, E_);
    for (int i = 0; i < F_; ++i)
        for (int a = 0; a < E_; ++a) th[i][a] = theta_[i][a];
    return rank(th) == static_cast<std::size_t>(F_);
}

int ConstraintMap::kernel_dimension() const { return E_ - F_; }

std::vector<double> ConstraintMap::project_to_kernel(const std::vector<double>& v) const {
    return matvec(projector_, v);
}

namespace {

std::vector<double> gaussian_vec(Rng& rng, int n, double scale) {
    std::vector<double> v(n);
    for (double& x : v) x = scale * rng.gaussian();
    return v;
}

} // namespace

ShearVector ConstraintMap::sample_teich(std::uint64_t seed, double scale) const {
    Rng rng(seed);
    ShearVector v;
    v.graph_fp = fp_;
    v.x = project_to_kernel(gaussian_vec(rng, E_, scale));
    return v;
}

LamVector ConstraintMap::sample_lamination(std::uint64_t seed, Lambda l, double su,
                                           double sv) const {
    Rng rng(seed);
    auto u = project_to_kernel(gaussian_vec(rng, E_, su));
    auto w = project_to_kernel(gaussian_vec(rng, E_, sv));
    LamVector out;
    out.lambda = l;
    out.graph_fp = fp_;
    out.w.reserve(E_);
    for (int a = 0; a < E_; ++a) out.w.emplace_back(u[a], w[a], l);
    return out;
}

GenShearVector ConstraintMap::sample_spacetime(std::uint64_t seed, Lambda l, double sx,
                                               double sy) const {
    Rng rng(seed);
    auto x = project_to_kernel(gaussian_vec(rng, E_, sx));
    auto y = project_to_kernel(gaussian_vec(rng, E_, sy));
    return make_gen(std::move(x), std::move(y), l, fp_);
}

CotangentVector ConstraintMap::sample_cotangent(std::uint64_t seed, double sx,
                                                double sp) const {
    Rng rng(seed);
    CotangentVector v;
    v.graph_fp = fp_;
    v.x = project_to_kernel(gaussian_vec(rng, E_, sx));
    v.p = project_to_kernel(gaussian_vec(rng, E_, sp));
    return v;
}

GenShearVector ConstraintMap::sample_box(std::uint64_t seed, Lambda l, double sx,
                                         double sy) const {
    Rng rng(seed);
    std::vector<double> x(E_), y(E_);
    for (int a = 0; a < E_; ++a) x[a] = sx * (2.0 * rng.uniform() - 1.0);
    for (int a = 0; a < E_; ++a) y[a] = sy * (2.0 * rng.uniform() - 1.0);
    return make_gen(std::move(x), std::move(y), l, fp_);
}

CotangentVector ConstraintMap::sample_cotangent_box(std::uint64_t seed, double sx,
                                                    double sp) const {
    Rng rng(seed);
    CotangentVector v;
    v.graph_fp = fp_;
    v.x.resize(E_);
    v.p.resize(E_);
    for (int a = 0; a < E_; ++a) v.x[a] = sx * (2.0 * rng.uniform() - 1.0);
    for (int a = 0; a < E_; ++a) v.p[a] = sp * (2.0 * rng.uniform() - 1.0);
    return v;
}

// ---------------------------------------------------------------------------
// JSON I/O
// ---------------------------------------------------------------------------

namespace {

nlohmann::ordered_json coords_header(Lambda l, Space s) {
    nlohmann::ordered_json j;
    j["lambda"] = static_cast<int>(l);
    j["space"] = space_name(s);
    j["values"] = nlohmann::ordered_json::object();
    return j;
}

} // namespace

std::string to_json(const ShearVector& v, const FatGraph& g) {
    require_same_graph(g.fingerprint(), v.graph_fp, "to_json");
    auto j = coords_header(Lambda::Zero, Space::Teich);
    j["lambda"] = 0;
    for (int e = 0; e < g.edge_count(); ++e) j["values"][g.label(e)] = v.x[e];
    return j.dump(2);
}

std::string to_json(const LamVector& v, const FatGraph& g) {
    require_same_graph(g.fingerprint(), v.graph_fp, "to_json");
    auto j = coords_header(v.lambda, Space::Lamination);
    for (int e = 0; e < g.edge_count(); ++e)
        j["values"][g.label(e)] = {v.w[e].re, v.w[e].im};
    return j.dump(2);
}

std::string to_json(const GenShearVector& v, const FatGraph& g) {
    require_same_graph(g.fingerprint(), v.graph_fp, "to_json");
    auto j = coords_header(v.lambda, Space::Spacetime);
    for (int e = 0; e < g.edge_count(); ++e)
        j["values"][g.label(e)] = {v.z[e].re, v.z[e].im};
    return j.dump(2);
}

std::string to_json(const CotangentVector& v, const FatGraph& g) {
    require_same_graph(g.fingerprint(), v.graph_fp, "to_json");
    auto j = coords_header(Lambda::Zero, Space::Cotangent);
    j["lambda"] = 0;
    for (int e = 0; e < g.edge_count(); ++e) j["values"][g.label(e)] = {v.x[e], v.p[e]};
    return j.dump(2);
}

ParsedCoords coords_from_json(const std::string& text, const FatGraph& g) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw CoordsError(std::string("coordinate JSON parse error: ") + e.what());
    }
    if (!j.contains("lambda") || !j.contains("space") || !j.contains("values"))
        throw CoordsError("coordinate JSON needs lambda, space and values");
    ParsedCoords out;
    out.lambda = lambda_from_int(j.at("lambda").get<int>());
    out.space = space_from_string(j.at("space").get<std::string>());
    const auto& vals = j.at("values");
    const int E = g.edge_count();

    auto fetch = [&](int e) -> const nlohmann::json& {
        const std::string& lab = g.label(e);
        if (!vals.contains(lab)) throw CoordsError("missing value for edge '" + lab + "'");
        return vals.at(lab);
    };

    switch (out.space) {
        case Space::Teich: {
            out.shear.graph_fp = g.fingerprint();
            out.shear.x.resize(E);
            for (int e = 0; e < E; ++e) out.shear.x[e] = fetch(e).get<double>();
            break;
        }
        case Space::Lamination: {
            out.lam.lambda = out.lambda;
            out.lam.graph_fp = g.fingerprint();
            for (int e = 0; e < E; ++e) {
                const auto& p = fetch(e);
                if (!p.is_array() || p.size() != 2)
                    throw CoordsError("lamination values must be [re, im] pairs");
                out.lam.w.emplace_back(p[0].get<double>(), p[1].get<double>(), out.lambda);
            }
            break;
        }
        case Space::Spacetime: {
            out.gen.lambda = out.lambda;
            out.gen.graph_fp = g.fingerprint();
            for (int e = 0; e < E; ++e) {
                const auto& p = fetch(e);
                if (!p.is_array() || p.size() != 2)
                    throw CoordsError("spacetime values must be [re, im] pairs");
                out.gen.z.emplace_back(p[0].get<double>(), p[1].get<double>(), out.lambda);
            }
            break;
        }
        case Space::Cotangent: {
            out.cot.graph_fp = g.fingerprint();
            out.cot.x.resize(E);
            out.cot.p.resize(E);
            for (int e = 0; e < E; ++e) {
                const auto& p = fetch(e);
                if (!p.is_array() || p.size() != 2)
                    throw CoordsError("cotangent values must be [x, p] pairs");
                out.cot.x[e] = p[0].get<double>();
                out.cot.p[e] = p[1].get<double>();
            }
            break;
        }
    }
    return out;
}

} // namespace holoshear

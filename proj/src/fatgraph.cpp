#include "holoshear/fatgraph.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace holoshear {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
    h ^= v;
    return h * 0x100000001b3ULL;
}

} // namespace

FatGraph::FatGraph(int half_edges, const std::vector<std::array<int, 2>>& sigma_pairs,
                   const std::vector<std::array<int, 3>>& nu_triples,
                   std::vector<std::string> edge_labels)
    : n_(half_edges), labels_(std::move(edge_labels)) {
    if (n_ <= 0 || n_ % 2 != 0)
        throw GraphValidationError("half_edges must be a positive even count");
    if (n_ % 3 != 0)
        throw GraphValidationError("trivalent graph needs half_edges divisible by 3");

    sigma_.assign(n_, -1);
    edge_of_.assign(n_, -1);
    edge_half_.reserve(sigma_pairs.size());
    for (std::size_t e = 0; e < sigma_pairs.size(); ++e) {
        auto [a, b] = sigma_pairs[e];
        if (a < 0 || a >= n_ || b < 0 || b >= n_)
            throw GraphValidationError("sigma pair out of range at edge " + std::to_string(e));
        if (a == b)
            throw GraphValidationError("sigma has a fixed point at half-edge " + std::to_string(a));
        if (sigma_[a] != -1 || sigma_[b] != -1)
            throw GraphValidationError("half-edge used twice in sigma at edge " + std::to_string(e));
        sigma_[a] = b;
        sigma_[b] = a;
        edge_of_[a] = edge_of_[b] = static_cast<int>(e);
        edge_half_.push_back({a, b});
    }
    for (int h = 0; h < n_; ++h)
        if (sigma_[h] == -1)
            throw GraphValidationError("half-edge " + std::to_string(h) + " missing from sigma");

    if (labels_.size() != edge_half_.size())
        throw GraphValidationError("edge_labels size does not match edge count");
    {
        std::set<std::string> seen(labels_.begin(), labels_.end());
        if (seen.size() != labels_.size())
            throw GraphValidationError("edge labels must be distinct");
    }

    nu_.assign(n_, -1);
    vertex_of_.assign(n_, -1);
    int v = 0;
    for (const auto& t : nu_triples) {
        for (int i = 0; i < 3; ++i) {
            int h = t[i], hn = t[(i + 1) % 3];
            if (h < 0 || h >= n_)
                throw GraphValidationError("nu entry out of range");
            if (nu_[h] != -1)
                throw GraphValidationError("half-edge " + std::to_string(h) + " appears in two nu cycles");
            nu_[h] = hn;
            vertex_of_[h] = v;
        }
        ++v;
    }
    for (int h = 0; h < n_; ++h)
        if (nu_[h] == -1)
            throw GraphValidationError("half-edge " + std::to_string(h) + " missing from nu");

    compute_derived();
}

void FatGraph::compute_derived() {
    // connectivity over half-edges under sigma and nu
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 0;
    while (!stack.empty()) {
        int h = stack.back();
        stack.pop_back();
        ++count;
        for (int w : {sigma_[h], nu_[h]})
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    if (count != n_) throw GraphValidationError("graph is not connected");

    // faces: orbits of h -> nu(sigma(h))
    faces_.clear();
    face_of_.assign(n_, -1);
    for (int h0 = 0; h0 < n_; ++h0) {
        if (face_of_[h0] != -1) continue;
        Face f;
        f.multiplicity.assign(edge_count(), 0);
        int h = h0;
        while (face_of_[h] == -1) {
            face_of_[h] = static_cast<int>(faces_.size());
            f.boundary.push_back(h);
            f.multiplicity[edge_of_[h]] += 1;
            h = nu_[sigma_[h]];
        }
        faces_.push_back(std::move(f));
    }

    const int V = vertex_count(), E = edge_count(), F = face_count();
    const int chi = V - E + F;
    if (chi % 2 != 0 || chi > 2)
        throw GraphValidationError("inconsistent Euler characteristic");
    genus_ = (2 - chi) / 2;
    const int s = F;
    if (2 * genus_ - 2 + s <= 0)
        throw GraphValidationError("surface must satisfy 2g - 2 + s > 0");
    if (E != 6 * genus_ - 6 + 3 * s || V != 4 * genus_ - 4 + 2 * s)
        throw GraphValidationError("edge/vertex counts inconsistent with an ideal triangulation");

    std::uint64_t fp = 0xcbf29ce484222325ULL;
    for (int h = 0; h < n_; ++h) fp = fnv1a(fp, static_cast<std::uint64_t>(sigma_[h]));
    for (int h = 0; h < n_; ++h) fp = fnv1a(fp, static_cast<std::uint64_t>(nu_[h]));
    for (const auto& l : labels_)
        for (char c : l) fp = fnv1a(fp, static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    fingerprint_ = fp;
}

int FatGraph::edge_by_label(const std::string& label) const {
    for (int e = 0; e < edge_count(); ++e)
        if (labels_[e] == label) return e;
    throw GraphValidationError("unknown edge label: " + label);
}

bool FatGraph::is_loop(int edge) const {
    return vertex_of_[edge_half_[edge][0]] == vertex_of_[edge_half_[edge][1]];
}

void FatGraph::validate_path(const EdgePath& p) const {
    if (p.tails.empty()) throw PathError("empty path");
    const int n = static_cast<int>(p.tails.size());
    for (int k = 0; k < n; ++k) {
        int h = p.tails[k], hn = p.tails[(k + 1) % n];
        if (h < 0 || h >= n_) throw PathError("path half-edge out of range");
        if (vertex_of_[sigma_[h]] != vertex_of_[hn])
            throw PathError("path not incident at step " + std::to_string(k));
        if (hn == sigma_[h])
            throw PathError("path backtracks at step " + std::to_string(k));
    }
}

Turn FatGraph::turn_between(int tail_from, int tail_to) const {
    const int in = sigma_[tail_from];
    if (tail_to == sigma_[tail_from])
        throw PathError("turn undefined on immediate backtrack");
    if (tail_to == nu_[in]) return Turn::Left;
    if (tail_to == nu_inv(in)) return Turn::Right;
    throw PathError("turn: edges not incident at a common vertex");
}

Turn FatGraph::turn(const EdgePath& p, int k) const {
    const int n = static_cast<int>(p.tails.size());
    return turn_between(p.tails[k % n], p.tails[(k + 1) % n]);
}

EdgePath FatGraph::face_boundary_path(int face_index) const {
    const Face& f = faces_.at(face_index);
    EdgePath p;
    // The face orbit lists half-edges h with successor nu(sigma(h)); read as
    // directed edges they chain tail-to-head already.
    p.tails = f.boundary;
    validate_path(p);
    return p;
}

EdgePath FatGraph::reverse_path(const EdgePath& p) const {
    EdgePath r;
    r.tails.reserve(p.tails.size());
    for (auto it = p.tails.rbegin(); it != p.tails.rend(); ++it) r.tails.push_back(sigma_[*it]);
    return r;
}

EdgePath FatGraph::splice(const EdgePath& a, const EdgePath& b) const {
    if (a.tails.front() != b.tails.front())
        throw PathError("splice requires paths starting with the same directed edge");
    EdgePath c;
    c.tails = b.tails;
    c.tails.insert(c.tails.end(), a.tails.begin(), a.tails.end());
    validate_path(c);
    return c;
}

bool FatGraph::cyclically_equal(const EdgePath& a, const EdgePath& b) const {
    if (a.tails.size() != b.tails.size()) return false;
    const int n = static_cast<int>(a.tails.size());
    for (int s = 0; s < n; ++s) {
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) ok = a.tails[k] == b.tails[(k + s) % n];
        if (ok) return true;
    }
    return false;
}

MoveRecord FatGraph::neighbor_frame(int edge) const {
    if (edge < 0 || edge >= edge_count()) throw GraphValidationError("edge index out of range");
    if (is_loop(edge))
        throw GraphValidationError("move unsupported on loop edge '" + labels_[edge] + "'");
    MoveRecord r;
    r.edge = edge;
    r.hs = edge_half_[edge][0];
    r.ht = edge_half_[edge][1];
    r.hB = nu_[r.hs];
    r.hG = nu_inv(r.hs);
    r.hD = nu_[r.ht];
    r.hE = nu_inv(r.ht);
    r.beta = edge_of_[r.hB];
    r.gamma = edge_of_[r.hG];
    r.delta = edge_of_[r.hD];
    r.eps = edge_of_[r.hE];
    r.pre_fingerprint = fingerprint_;
    return r;
}

std::pair<FatGraph, MoveRecord> FatGraph::whitehead(int edge) const {
    MoveRecord rec = neighbor_frame(edge);
    std::vector<int> nu2 = nu_;
    // new triangles: (alpha, gamma, delta) and (alpha, eps, beta)
    nu2[rec.hs] = rec.hG;
    nu2[rec.hG] = rec.hD;
    nu2[rec.hD] = rec.hs;
    nu2[rec.ht] = rec.hE;
    nu2[rec.hE] = rec.hB;
    nu2[rec.hB] = rec.ht;

    std::vector<std::array<int, 3>> triples;
    std::vector<char> seen(n_, 0);
    for (int h = 0; h < n_; ++h) {
        if (seen[h]) continue;
        std::array<int, 3> t{h, nu2[h], nu2[nu2[h]]};
        seen[t[0]] = seen[t[1]] = seen[t[2]] = 1;
        triples.push_back(t);
    }
    FatGraph out(n_, edge_half_, triples, labels_);
    rec.post_fingerprint = out.fingerprint();
    return {std::move(out), rec};
}

EdgePath FatGraph::transport_path(const EdgePath& p, const MoveRecord& rec,
                                  const FatGraph& post) const {
    validate_path(p);
    std::vector<int> kept;
    for (int h : p.tails)
        if (edge_of_[h] != rec.edge) kept.push_back(h);
    if (kept.empty()) throw PathError("transport_path: path supported on the flipped edge only");

    const int n = static_cast<int>(kept.size());
    std::vector<int> out;
    out.reserve(n + 2);
    for (int k = 0; k < n; ++k) {
        const int h = kept[k], hn = kept[(k + 1) % n];
        out.push_back(h);
        const int w_from = post.vertex_of(post.sigma(h));
        const int w_to = post.vertex_of(hn);
        if (w_from == w_to) continue;
        // must cross the flipped edge
        if (w_from == post.vertex_of(rec.hs) && w_to == post.vertex_of(rec.ht))
            out.push_back(rec.hs);
        else if (w_from == post.vertex_of(rec.ht) && w_to == post.vertex_of(rec.hs))
            out.push_back(rec.ht);
        else
            throw PathError("transport_path: junction does not reconnect");
    }

    // cyclic backtrack reduction
    bool changed = true;
    while (changed && out.size() >= 2) {
        changed = false;
        const int m = static_cast<int>(out.size());
        for (int k = 0; k < m; ++k) {
            int kn = (k + 1) % m;
            if (out[kn] == post.sigma(out[k])) {
                if (kn > k) {
                    out.erase(out.begin() + kn);
                    out.erase(out.begin() + k);
                } else {
                    out.erase(out.begin() + k);
                    out.erase(out.begin());
                }
                changed = true;
                break;
            }
        }
    }
    if (out.empty()) throw PathError("transport_path: path reduced to nothing");
    EdgePath q{out};
    post.validate_path(q);
    return q;
}

std::vector<int> FatGraph::face_correspondence(const MoveRecord& rec, const FatGraph& post) const {
    std::vector<int> corr(face_count(), -1);
    for (int i = 0; i < face_count(); ++i) {
        EdgePath b = face_boundary_path(i);
        EdgePath t = transport_path(b, rec, post);
        corr[i] = post.face_of(t.tails.front());
        // transported boundary must itself be the face cycle
        EdgePath fb = post.face_boundary_path(corr[i]);
        if (!post.cyclically_equal(t, fb))
            throw GraphValidationError("face correspondence failed across move");
    }
    return corr;
}

FatGraph FatGraph::with_labels_swapped(const std::string& la, const std::string& lb) const {
    const int ea = edge_by_label(la), eb = edge_by_label(lb);
    std::vector<std::string> labels = labels_;
    std::swap(labels[ea], labels[eb]);
    std::vector<std::array<int, 3>> triples;
    std::vector<char> seen(n_, 0);
    for (int h = 0; h < n_; ++h) {
        if (seen[h]) continue;
        std::array<int, 3> t{h, nu_[h], nu_[nu_[h]]};
        seen[t[0]] = seen[t[1]] = seen[t[2]] = 1;
        triples.push_back(t);
    }
    return FatGraph(n_, edge_half_, triples, labels);
}

bool FatGraph::isomorphic_labeled(const FatGraph& g1, const FatGraph& g2) {
    if (g1.n_ != g2.n_ || g1.edge_count() != g2.edge_count()) return false;
    // the map must send edge k of g1 to the same-labeled edge of g2
    std::vector<int> edge_map(g1.edge_count(), -1);
    for (int e = 0; e < g1.edge_count(); ++e) {
        bool found = false;
        for (int f = 0; f < g2.edge_count(); ++f)
            if (g1.labels_[e] == g2.labels_[f]) {
                edge_map[e] = f;
                found = true;
                break;
            }
        if (!found) return false;
    }
    // sigma and nu generate a transitive action, so the image of one
    // half-edge determines the whole map; two candidates to try.
    const int e0 = g1.edge_of_[0];
    for (int cand : g2.edge_half_[edge_map[e0]]) {
        std::vector<int> m(g1.n_, -1);
        m[0] = cand;
        std::vector<int> stack{0};
        bool ok = true;
        while (!stack.empty() && ok) {
            int h = stack.back();
            stack.pop_back();
            const int pairs[2][2] = {{g1.sigma_[h], g2.sigma_[m[h]]}, {g1.nu_[h], g2.nu_[m[h]]}};
            for (auto& pr : pairs) {
                if (m[pr[0]] == -1) {
                    m[pr[0]] = pr[1];
                    stack.push_back(pr[0]);
                } else if (m[pr[0]] != pr[1]) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) continue;
        for (int h = 0; h < g1.n_ && ok; ++h)
            ok = m[h] != -1 && edge_map[g1.edge_of_[h]] == g2.edge_of_[m[h]];
        if (ok) return true;
    }
    return false;
}

FatGraph FatGraph::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw GraphValidationError(std::string("graph JSON parse error: ") + e.what());
    }
    if (!j.contains("half_edges") || !j.contains("sigma") || !j.contains("nu") ||
        !j.contains("edge_labels"))
        throw GraphValidationError("graph JSON needs half_edges, sigma, nu, edge_labels");
    const int n = j.at("half_edges").get<int>();
    std::vector<std::array<int, 2>> pairs;
    for (const auto& pr : j.at("sigma")) {
        if (!pr.is_array() || pr.size() != 2)
            throw GraphValidationError("sigma entries must be pairs");
        pairs.push_back({pr[0].get<int>(), pr[1].get<int>()});
    }
    std::vector<std::array<int, 3>> triples;
    for (const auto& tr : j.at("nu")) {
        if (!tr.is_array() || tr.size() != 3)
            throw GraphValidationError("nu entries must be triples");
        triples.push_back({tr[0].get<int>(), tr[1].get<int>(), tr[2].get<int>()});
    }
    std::vector<std::string> labels = j.at("edge_labels").get<std::vector<std::string>>();
    return FatGraph(n, pairs, triples, std::move(labels));
}

std::string FatGraph::to_json() const {
    nlohmann::ordered_json j;
    j["half_edges"] = n_;
    auto& sig = j["sigma"] = nlohmann::json::array();
    for (const auto& pr : edge_half_) sig.push_back({pr[0], pr[1]});
    auto& nu = j["nu"] = nlohmann::json::array();
    std::vector<char> seen(n_, 0);
    for (int h = 0; h < n_; ++h) {
        if (seen[h]) continue;
        std::array<int, 3> t{h, nu_[h], nu_[nu_[h]]};
        seen[t[0]] = seen[t[1]] = seen[t[2]] = 1;
        nu.push_back({t[0], t[1], t[2]});
    }
    j["edge_labels"] = labels_;
    return j.dump(2);
}

} // namespace holoshear

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace holoshear {

struct GraphValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Turn { Left, Right };

// A closed directed edge path; each entry is the tail half-edge of the
// traversed edge (the path runs h -> sigma(h) and continues at sigma(h)'s vertex).
struct EdgePath {
    std::vector<int> tails;

    bool operator==(const EdgePath&) const = default;
};

struct Face {
    std::vector<int> boundary;       // half-edges in face order
    std::vector<int> multiplicity;   // per edge
};

struct MoveRecord {
    int edge = -1;
    int hs = -1, ht = -1;             // half-edges of the flipped edge
    int hB = -1, hG = -1, hD = -1, hE = -1;   // frame slots: successor/predecessor
    int beta = -1, gamma = -1, delta = -1, eps = -1;   // frame edges
    std::uint64_t pre_fingerprint = 0, post_fingerprint = 0;
};

// Trivalent fat graph: fixed-point-free involution sigma pairing half-edges
// into edges plus a permutation nu whose 3-cycles are the counterclockwise
// orders at the vertices. Immutable after construction.
class FatGraph {
public:
    FatGraph(int half_edges, const std::vector<std::array<int, 2>>& sigma_pairs,
             const std::vector<std::array<int, 3>>& nu_triples,
             std::vector<std::string> edge_labels);

    int half_edge_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edge_half_.size()); }
    int vertex_count() const { return n_ / 3; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int genus() const { return genus_; }
    int punctures() const { return face_count(); }

    int sigma(int h) const { return sigma_[h]; }
    int nu(int h) const { return nu_[h]; }
    int nu_inv(int h) const { return nu_[nu_[h]]; }
    int vertex_of(int h) const { return vertex_of_[h]; }
    int edge_of(int h) const { return edge_of_[h]; }
    const std::array<int, 2>& half_edges_of(int edge) const { return edge_half_[edge]; }
    const std::string& label(int edge) const { return labels_[edge]; }
    const std::vector<std::string>& labels() const { return labels_; }
    int edge_by_label(const std::string& label) const;
    bool is_loop(int edge) const;

    const std::vector<Face>& faces() const { return faces_; }
    // face index containing a given half-edge
    int face_of(int h) const { return face_of_[h]; }

    std::uint64_t fingerprint() const { return fingerprint_; }

    // path machinery -------------------------------------------------------
    void validate_path(const EdgePath& p) const;
    Turn turn(const EdgePath& p, int k) const;      // between edges k and k+1 (cyclic)
    Turn turn_between(int tail_from, int tail_to) const;
    EdgePath face_boundary_path(int face_index) const;
    EdgePath reverse_path(const EdgePath& p) const;
    // splice of two closed paths sharing the same starting directed edge
    EdgePath splice(const EdgePath& a, const EdgePath& b) const;
    bool cyclically_equal(const EdgePath& a, const EdgePath& b) const;

    // Whitehead move along a non-loop edge; labels are stable.
    std::pair<FatGraph, MoveRecord> whitehead(int edge) const;
    MoveRecord neighbor_frame(int edge) const;

    // Rewrites a closed path on this graph to the post-move graph so that it
    // stays in the same free homotopy class.
    EdgePath transport_path(const EdgePath& p, const MoveRecord& rec,
                            const FatGraph& post) const;

    // Correspondence faces(this) -> faces(post) across a move.
    std::vector<int> face_correspondence(const MoveRecord& rec, const FatGraph& post) const;

    FatGraph with_labels_swapped(const std::string& la, const std::string& lb) const;

    static bool isomorphic_labeled(const FatGraph& g1, const FatGraph& g2);

    // JSON document of the form
    // {"half_edges": N, "sigma": [[a,b],...], "nu": [[a,b,c],...], "edge_labels": [...]}
    static FatGraph from_json(const std::string& text);
    std::string to_json() const;

private:
    int n_ = 0;
    std::vector<int> sigma_, nu_, vertex_of_, edge_of_, face_of_;
    std::vector<std::array<int, 2>> edge_half_;
    std::vector<std::string> labels_;
    std::vector<Face> faces_;
    int genus_ = 0;
    std::uint64_t fingerprint_ = 0;

    void compute_derived();
};

} // namespace holoshear

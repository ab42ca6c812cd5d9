#include "holoshear/acceptance.hpp"
#include "holoshear/holonomy.hpp"
#include "holoshear/moves.hpp"
#include "holoshear/poisson.hpp"
#include "holoshear/shipped_graphs.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace holoshear;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCriterionFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

void emit(const std::string& report_path, const nlohmann::ordered_json& j) {
    const std::string text = j.dump(2) + "\n";
    if (report_path.empty())
        std::cout << text;
    else
        write_file(report_path, text);
}

FatGraph load_graph(const std::string& path) {
    // shipped graphs are addressable by name as well as by file
    for (const auto& info : shipped_graph_table())
        if (path == info.name) return FatGraph::from_json(info.json);
    return FatGraph::from_json(read_file(path));
}

// "a+,b-,c+" (label with direction) or "face:K"
EdgePath parse_path(const FatGraph& g, const std::string& spec) {
    if (spec.rfind("face:", 0) == 0) {
        const int idx = std::stoi(spec.substr(5));
        if (idx < 0 || idx >= g.face_count())
            throw PathError("face index out of range in path spec");
        return g.face_boundary_path(idx);
    }
    EdgePath p;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const char dir = item.back();
        if (dir != '+' && dir != '-')
            throw PathError("path entries need a direction suffix, e.g. 'a+' or 'b-'");
        const int e = g.edge_by_label(item.substr(0, item.size() - 1));
        p.tails.push_back(g.half_edges_of(e)[dir == '+' ? 0 : 1]);
    }
    g.validate_path(p);
    return p;
}

nlohmann::ordered_json rnum_json(const RNum& v) {
    return nlohmann::ordered_json{{"re", v.re}, {"im", v.im}};
}

int cmd_validate(const std::string& graph_path, const std::string& report_path) {
    const FatGraph g = load_graph(graph_path);
    const ConstraintMap cm(g);
    nlohmann::ordered_json j;
    j["half_edges"] = g.half_edge_count();
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["faces"] = g.face_count();
    j["genus"] = g.genus();
    j["punctures"] = g.punctures();
    j["edge_labels"] = g.labels();
    auto& faces = j["face_multiplicities"] = nlohmann::ordered_json::array();
    for (const Face& f : g.faces()) faces.push_back(f.multiplicity);
    j["theta_full_row_rank"] = cm.full_row_rank();
    j["kernel_dimension"] = cm.kernel_dimension();
    j["wp_coefficients"] = wp_coefficients(g);
    j["wp_rank"] = wp_rank(g);
    j["constraints_casimir_exact"] = constraints_casimir_exact(g);
    j["dirac_matrix"] = cm.dirac_matrix();
    j["default_gauge_admissible"] = cm.gauge_admissible();
    emit(report_path, j);
    return kExitOk;
}

int cmd_holonomy(const std::string& graph_path, const std::string& coords_path,
                 const std::string& path_spec, const std::string& report_path) {
    const FatGraph g = load_graph(graph_path);
    const EdgePath p = parse_path(g, path_spec);
    const ParsedCoords pc = coords_from_json(read_file(coords_path), g);

    GenShearVector z;
    switch (pc.space) {
        case Space::Teich:
            z = embed_real(pc.shear, pc.lambda);
            break;
        case Space::Spacetime:
            z = pc.gen;
            break;
        case Space::Cotangent:
            z = pi_sharp(pc.cot, g, pc.lambda);
            break;
        case Space::Lamination:
            throw CoordsError(
                "holonomy needs teich, spacetime or cotangent coordinates (a lamination "
                "file has no base point)");
    }
    const Mat2 m = holonomy(g, p, z);
    const RNum tr = trace(m);

    nlohmann::ordered_json j;
    j["lambda"] = static_cast<int>(pc.lambda);
    j["path_length"] = p.tails.size();
    j["trace"] = rnum_json(tr);
    if (std::abs(tr.re) >= 2.0)
        j["geodesic_length"] = geodesic_length(tr);
    else
        j["geodesic_length"] = nullptr;
    j["parabolic"] = std::abs(std::abs(tr.re) - 2.0) < 1e-9 && std::abs(tr.im) < 1e-9;
    j["matrix"] = {rnum_json(m.a), rnum_json(m.b), rnum_json(m.c), rnum_json(m.d)};
    emit(report_path, j);
    return kExitOk;
}

int cmd_apply(const std::string& graph_path, const std::string& space_str, int lambda_int,
              const std::string& edge_label, const std::string& in_path,
              const std::string& base_path, const std::string& out_path,
              const std::string& out_graph_path) {
    const FatGraph g = load_graph(graph_path);
    const Space space = space_from_string(space_str);
    const Lambda l = lambda_from_int(lambda_int);
    const int e = g.edge_by_label(edge_label);
    const ParsedCoords pc = coords_from_json(read_file(in_path), g);
    if (pc.space != space)
        throw CoordsError("input file is tagged '" + std::string(space_name(pc.space)) +
                          "' but --space says '" + space_str + "'");

    std::string coords_out;
    FatGraph post = g;
    switch (space) {
        case Space::Teich: {
            auto m = move_x(g, pc.shear, e);
            post = std::move(m.graph);
            coords_out = to_json(m.x, post);
            break;
        }
        case Space::Lamination: {
            if (base_path.empty())
                throw CoordsError("lamination moves need --base with a teich file");
            const ParsedCoords pb = coords_from_json(read_file(base_path), g);
            if (pb.space != Space::Teich)
                throw CoordsError("--base must be a teich coordinate file");
            auto m = move_lam(g, pb.shear, pc.lam, e);
            post = std::move(m.graph);
            coords_out = to_json(m.w, post);
            break;
        }
        case Space::Spacetime: {
            if (pc.lambda != l) throw CoordsError("file lambda differs from --lambda");
            auto m = move_z(g, pc.gen, e);
            post = std::move(m.graph);
            coords_out = to_json(m.z, post);
            break;
        }
        case Space::Cotangent: {
            auto m = move_cotangent(g, pc.cot, e, l);
            post = std::move(m.graph);
            coords_out = to_json(m.cv, post);
            break;
        }
    }
    write_file(out_path, coords_out + "\n");
    if (!out_graph_path.empty()) write_file(out_graph_path, post.to_json() + "\n");
    return kExitOk;
}

int cmd_relations(const std::string& graph_path, const std::string& space_str, int lambda_int,
                  int samples, std::uint64_t seed, const std::string& report_path) {
    const FatGraph g = load_graph(graph_path);
    const auto rep =
        relation_suite(g, space_from_string(space_str), lambda_from_int(lambda_int), samples, seed);
    nlohmann::ordered_json j;
    j["graph"] = graph_path;
    j["space"] = space_str;
    j["lambda"] = lambda_int;
    j["samples"] = rep.samples;
    j["seed"] = seed;
    j["involutivity"] = rep.involutivity;
    j["naturality"] = rep.naturality;
    if (rep.commutativity >= 0) j["commutativity"] = rep.commutativity;
    if (rep.pentagon >= 0) j["pentagon"] = rep.pentagon;
    j["notes"] = rep.notes;
    emit(report_path, j);
    return kExitOk;
}

int cmd_bracket(const std::string& graph_path, const std::string& coords_path,
                const std::string& path_a, const std::string& path_b,
                const std::string& report_path) {
    const FatGraph g = load_graph(graph_path);
    const ParsedCoords pc = coords_from_json(read_file(coords_path), g);
    if (pc.space != Space::Spacetime)
        throw CoordsError("bracket expects spacetime (shear-bending) coordinates");
    const EdgePath a = parse_path(g, path_a);
    const EdgePath b = parse_path(g, path_b);

    const auto rep = goldman_bracket_traces(g, a, b, pc.gen);
    nlohmann::ordered_json j;
    j["lambda"] = static_cast<int>(pc.lambda);
    j["numeric_route"] = rep.numeric;
    j["segment_route"] = rep.lie;
    j["discrepancy"] = rep.discrepancy();
    auto& segs = j["segments"] = nlohmann::ordered_json::array();
    for (const auto& s : rep.segments)
        segs.push_back({{"reversed", s.reversed},
                        {"shared_edges", s.length},
                        {"eps", s.eps},
                        {"contribution", s.contribution}});
    for (bool re : {true, false}) {
        const auto flow = hamiltonian_flow_check(g, a, pc.gen, re);
        j[re ? "flow_check_re" : "flow_check_im"] = {
            {"max_bracket_err", flow.max_bracket_err},
            {"max_derivative_err", flow.max_derivative_err}};
    }
    emit(report_path, j);
    return kExitOk;
}

int cmd_accept(std::uint64_t seed, int samples, double tol, const std::string& report_path) {
    AcceptanceConfig cfg;
    cfg.seed = seed;
    if (samples > 0) {
        cfg.pentagon_samples = samples;
        cfg.relation_samples = samples;
        cfg.constraint_samples = std::max(1, samples / 2);
        cfg.poisson_samples = std::max(1, samples / 4);
        cfg.goldman_samples = std::max(1, samples / 2);
        cfg.cocycle_samples = std::max(1, samples / 2);
        cfg.trace_samples = std::max(1, samples / 4);
    }
    if (tol > 0) cfg.tol_override = tol;
    const AcceptanceReport rep = run_acceptance(cfg);
    std::cout << format_acceptance_lines(rep);
    if (!report_path.empty()) write_file(report_path, acceptance_report_json(rep) + "\n");
    return rep.all_pass() ? kExitOk : kExitCriterionFailure;
}

int cmd_graphs(const std::string& write_dir) {
    for (const auto& info : shipped_graph_table()) {
        const FatGraph g = FatGraph::from_json(info.json);
        std::cout << info.name << ": genus " << g.genus() << ", punctures " << g.punctures()
                  << ", edges " << g.edge_count() << "\n";
        if (!write_dir.empty())
            write_file(write_dir + "/" + info.name + ".json", g.to_json() + "\n");
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"holoshear: shear coordinates, holonomies and Whitehead moves on fat graphs"};
    app.require_subcommand(1);

    std::string graph_path, coords_path, path_spec, path_a, path_b, report_path;
    std::string space_str = "spacetime", edge_label, in_path, base_path, out_path, out_graph;
    std::string write_dir;
    int lambda_int = 0, samples = 0;
    std::uint64_t seed = 7;
    double tol = -1;

    auto* validate = app.add_subcommand("validate", "validate a graph file and report invariants");
    validate->add_option("--graph", graph_path, "graph JSON file or shipped graph name")
        ->required();
    validate->add_option("--report", report_path, "write the JSON report to a file");

    auto* holo = app.add_subcommand("holonomy", "holonomy of a closed edge path");
    holo->add_option("--graph", graph_path)->required();
    holo->add_option("--coords", coords_path, "coordinate JSON file")->required();
    holo->add_option("--path", path_spec, "e.g. 'a+,b-' or 'face:0'")->required();
    holo->add_option("--report", report_path);

    auto* moves = app.add_subcommand("moves", "Whitehead moves");
    moves->require_subcommand(1);
    auto* apply = moves->add_subcommand("apply", "apply a move to a coordinate file");
    apply->add_option("--graph", graph_path)->required();
    apply->add_option("--space", space_str, "teich|lamination|spacetime|cotangent")->required();
    apply->add_option("--lambda", lambda_int, "-1, 0 or 1");
    apply->add_option("--edge", edge_label, "edge label to flip")->required();
    apply->add_option("--in", in_path, "input coordinate file")->required();
    apply->add_option("--base", base_path, "teich base file (lamination moves)");
    apply->add_option("--out", out_path, "output coordinate file")->required();
    apply->add_option("--out-graph", out_graph, "also write the rewired graph");

    auto* relations = moves->add_subcommand("relations", "mapping class relation suite");
    relations->add_option("--graph", graph_path)->required();
    relations->add_option("--space", space_str)->required();
    relations->add_option("--lambda", lambda_int);
    relations->add_option("--samples", samples)->default_val(100);
    relations->add_option("--seed", seed);
    relations->add_option("--report", report_path);

    auto* bracket = app.add_subcommand("bracket", "Goldman bracket of two trace functions");
    bracket->add_option("--graph", graph_path)->required();
    bracket->add_option("--coords", coords_path, "spacetime coordinate file")->required();
    bracket->add_option("--path-a", path_a)->required();
    bracket->add_option("--path-b", path_b)->required();
    bracket->add_option("--report", report_path);

    auto* accept = app.add_subcommand("accept", "run the acceptance battery");
    accept->add_option("--seed", seed);
    accept->add_option("--samples", samples, "override the per-criterion sample counts");
    accept->add_option("--tol", tol, "override every tolerance (diagnostic)");
    accept->add_option("--report", report_path);

    auto* graphs = app.add_subcommand("graphs", "list bundled graphs");
    graphs->add_option("--write-dir", write_dir, "write the bundled graph files here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(graph_path, report_path);
        if (holo->parsed()) return cmd_holonomy(graph_path, coords_path, path_spec, report_path);
        if (moves->parsed()) {
            if (apply->parsed())
                return cmd_apply(graph_path, space_str, lambda_int, edge_label, in_path,
                                 base_path, out_path, out_graph);
            return cmd_relations(graph_path, space_str, lambda_int, samples, seed, report_path);
        }
        if (bracket->parsed())
            return cmd_bracket(graph_path, coords_path, path_a, path_b, report_path);
        if (accept->parsed()) return cmd_accept(seed, samples, tol, report_path);
        if (graphs->parsed()) return cmd_graphs(write_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

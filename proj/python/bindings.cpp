#include "qpskew/cli.hpp"
#include "qpskew/ginzburg.hpp"
#include "qpskew/groupoid.hpp"
#include "qpskew/modules.hpp"
#include "qpskew/quiver.hpp"
#include "qpskew/skew.hpp"
#include "qpskew/surface.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace qpskew;

namespace {

py::dict surface_info_dict(const SurfaceInfo& info) {
    py::dict d;
    d["genus"] = info.genus;
    d["boundary_components"] = info.boundary_components;
    d["marked_per_boundary"] = info.marked_per_boundary;
    d["marked_points"] = info.marked_points;
    d["punctures"] = info.punctures;
    d["arcs"] = info.internal_arcs;
    d["boundary_segments"] = info.boundary_edges;
    d["triangles"] = info.triangles;
    d["euler"] = info.euler;
    d["connected"] = info.connected;
    return d;
}

py::dict rep_dict(const Quiver& q, const Representation& r) {
    py::dict dims, mats;
    for (int v = 0; v < q.num_vertices(); ++v) dims[py::str(q.vertex_id(v))] = r.dims[v];
    for (int a = 0; a < q.num_arrows(); ++a) {
        if (r.mats[a].is_zero()) continue;
        py::list rows;
        for (int i = 0; i < r.mats[a].rows(); ++i) {
            py::list row;
            for (int j = 0; j < r.mats[a].cols(); ++j)
                row.append(to_string(r.mats[a].at(i, j)));
            rows.append(row);
        }
        mats[py::str(q.arrow(a).id)] = rows;
    }
    py::dict d;
    d["dims"] = dims;
    d["matrices"] = mats;
    return d;
}

struct ModulePipeline {
    Triangulation tri;
    DoubleCover cover;
};

ModulePipeline make_pipeline(const std::string& text) {
    Triangulation tri = parse_triangulation_text(text);
    DoubleCover cover = double_cover(tri);
    return ModulePipeline{std::move(tri), std::move(cover)};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "skew group quivers with potential, double covers and their modules";

    py::register_exception<Error>(m, "QpskewError");

    m.def(
        "validate",
        [](const std::string& text) {
            Triangulation t = parse_triangulation_text(text);
            return surface_info_dict(validate_triangulation(t));
        },
        py::arg("triangulation"),
        "Validate a triangulation text and return its invariants.");

    m.def(
        "blocks",
        [](const std::string& text) {
            Triangulation t = parse_triangulation_text(text);
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& b : block_decompose(t))
                out.emplace_back(t.tri(b.triangle).id, block_type_name(b.type));
            return out;
        },
        py::arg("triangulation"), "Block decomposition as (triangle, type) pairs.");

    m.def(
        "adjacency_qp",
        [](const std::string& text) {
            Triangulation t = parse_triangulation_text(text);
            AdjacencyResult adj = adjacency_qp(t);
            py::dict d;
            d["quiver"] = print_quiver(adj.qp);
            std::ostringstream sigma;
            const Quiver& q = adj.qp.quiver;
            for (int v = 0; v < q.num_vertices(); ++v)
                if (adj.sigma.vertex(v) > v)
                    sigma << "sigma_vertex " << q.vertex_id(v) << " "
                          << q.vertex_id(adj.sigma.vertex(v)) << "\n";
            for (int a = 0; a < q.num_arrows(); ++a)
                if (adj.sigma.arrow(a) > a)
                    sigma << "sigma_arrow " << q.arrow(a).id << " "
                          << q.arrow(adj.sigma.arrow(a)).id << "\n";
            d["action"] = sigma.str();
            return d;
        },
        py::arg("triangulation"),
        "Adjacency quiver with potential and exchange action, in the text format.");

    m.def(
        "skew",
        [](const std::string& text) {
            QuiverFile file = parse_quiver_text(text);
            Involution sigma =
                Involution::from_pairs(file.qp.quiver, file.sigma_vertices, file.sigma_arrows);
            auto choice = find_admissible(file.qp.quiver, sigma);
            if (!choice) throw Error("NoAdmissibleChoice", "no admissible orbit choice exists");
            SkewResult ctx = skew_quiver(file.qp.quiver, sigma, *choice);
            ctx.potential_G = skew_potential(ctx, file.qp.potential);
            return print_quiver(QuiverWithPotential{ctx.quiver_G, ctx.potential_G});
        },
        py::arg("quiver"),
        "Skew group quiver with potential of a quiver file carrying sigma lines.");

    m.def(
        "cover",
        [](const std::string& text) {
            ModulePipeline p = make_pipeline(text);
            py::dict d;
            d["triangulation"] = print_triangulation(p.cover.cover);
            d["quiver"] = print_quiver(p.cover.cover_qp.qp);
            d["invariants"] = surface_info_dict(validate_triangulation(p.cover.cover));
            return d;
        },
        py::arg("triangulation"), "The unpunctured double cover and its quiver with potential.");

    m.def(
        "string_module",
        [](const std::string& text, const std::vector<std::string>& word, bool induce_flag) {
            ModulePipeline p = make_pipeline(text);
            Representation r =
                string_module(p.cover.cover_qp, make_crossing_word(p.cover.cover_qp, word, false));
            py::dict d;
            d["module"] = rep_dict(p.cover.cover_qp.qp.quiver, r);
            if (induce_flag)
                d["induced"] = rep_dict(p.cover.base_qp.qp.quiver, induce_to_base(p.cover, r));
            return d;
        },
        py::arg("triangulation"), py::arg("word"), py::arg("induce") = false,
        "String module of a crossing word on the double cover.");

    m.def(
        "band_module",
        [](const std::string& text, const std::vector<std::string>& word,
           const std::string& lambda, int power, bool induce_flag, bool decompose_flag,
           unsigned seed) {
            ModulePipeline p = make_pipeline(text);
            Representation r = band_module(
                p.cover.cover_qp, make_crossing_word(p.cover.cover_qp, word, true),
                parse_rational(lambda), power);
            py::dict d;
            d["module"] = rep_dict(p.cover.cover_qp.qp.quiver, r);
            if (induce_flag || decompose_flag) {
                Representation ind = induce_to_base(p.cover, r);
                const Quiver& bq = p.cover.base_qp.qp.quiver;
                d["induced"] = rep_dict(bq, ind);
                if (decompose_flag) {
                    py::list parts;
                    for (const auto& part : decompose(bq, ind, seed)) parts.append(rep_dict(bq, part));
                    d["summands"] = parts;
                }
            }
            return d;
        },
        py::arg("triangulation"), py::arg("word"), py::arg("lambda_") = "1",
        py::arg("power") = 1, py::arg("induce") = false, py::arg("decompose") = false,
        py::arg("seed") = 1, "Band module of a cyclic word on the double cover.");

    m.def(
        "classify",
        [](const std::string& text, int max_len) {
            Triangulation t = parse_triangulation_text(text);
            DoubleCover cover = double_cover(t);
            CoverGraphs cg = cover_graphs(t, cover);
            StringClasses strings = classify_strings(cg.base, max_len);
            BandClasses bands = classify_bands(cg.base, max_len);
            py::dict d;
            d["string_pair_classes"] = strings.pair_classes;
            d["string_symmetric_classes"] = static_cast<int>(strings.symmetric.size());
            d["string_tagged_arcs"] = strings.tagged_arcs();
            d["band_asymmetric_pairs"] = bands.asymmetric_pairs;
            d["band_symmetric_classes"] = static_cast<int>(bands.symmetric.size());
            d["band_in_image"] = bands.in_image_of_psi;
            return d;
        },
        py::arg("triangulation"), py::arg("max_len") = 4,
        "String and band class counts on the orbifold up to the length bound.");

    m.def(
        "ginzburg_check",
        [](const std::string& text) {
            QuiverFile file = parse_quiver_text(text);
            Involution sigma =
                Involution::from_pairs(file.qp.quiver, file.sigma_vertices, file.sigma_arrows);
            auto choice = find_admissible(file.qp.quiver, sigma);
            if (!choice) throw Error("NoAdmissibleChoice", "no admissible orbit choice exists");
            GinzburgCompareReport report = skew_ginzburg_compare(file.qp, sigma, *choice);
            py::list entries;
            for (const auto& e : report.entries) {
                py::dict entry;
                entry["generator"] = e.generator;
                entry["zeta"] = to_string(e.zeta);
                entry["match"] = e.match;
                entries.append(entry);
            }
            py::dict d;
            d["ok"] = report.ok;
            d["entries"] = entries;
            return d;
        },
        py::arg("quiver"),
        "Compare the skew of the Ginzburg data with the Ginzburg data of the skew QP.");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int status = cli::run(args, out, err);
            return py::make_tuple(status, out.str(), err.str());
        },
        py::arg("args"), "Run a CLI invocation; returns (status, stdout, stderr).");
}

#include "qpskew/cli.hpp"

#include "qpskew/ginzburg.hpp"
#include "qpskew/groupoid.hpp"
#include "qpskew/modules.hpp"
#include "qpskew/quiver.hpp"
#include "qpskew/skew.hpp"
#include "qpskew/surface.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace qpskew::cli {

namespace {

struct Options {
    std::string format = "text";
    bool machine() const { return format == "machine"; }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("FileError", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

QuiverFile load_quiver(const std::string& path, const std::string& action_path) {
    QuiverFile file = parse_quiver_text(slurp(path));
    if (!action_path.empty()) {
        std::istringstream ss(slurp(action_path));
        std::string line;
        std::vector<std::string> toks;
        while (std::getline(ss, line)) {
            std::istringstream ls(line);
            toks.clear();
            std::string tok;
            while (ls >> tok) {
                if (tok[0] == '#') break;
                toks.push_back(tok);
            }
            if (toks.empty()) continue;
            if (toks[0] == "sigma_vertex" && toks.size() == 3)
                file.sigma_vertices.emplace_back(toks[1], toks[2]);
            else if (toks[0] == "sigma_arrow" && toks.size() == 3)
                file.sigma_arrows.emplace_back(toks[1], toks[2]);
            else
                throw Error("ParseError", "bad action line: " + line);
        }
    }
    return file;
}

void emit_quiver(std::ostream& out, const QuiverWithPotential& qp, const Options& opt,
                 const std::string& prefix = "") {
    const Quiver& q = qp.quiver;
    if (opt.machine()) {
        for (int v = 0; v < q.num_vertices(); ++v)
            out << prefix << "vertex=" << q.vertex_id(v) << "\n";
        for (const auto& a : q.arrows())
            out << prefix << "arrow=" << a.id << " " << q.vertex_id(a.src) << " "
                << q.vertex_id(a.tgt) << "\n";
        for (const auto& [p, c] : qp.potential.expr().terms()) {
            out << prefix << "potential=" << to_string(c);
            for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
                out << " " << q.arrow(*it).id;
            out << "\n";
        }
    } else {
        out << print_quiver(qp);
        if (qp.potential.is_zero()) out << "# S = 0\n";
    }
}

void emit_sigma(std::ostream& out, const Quiver& q, const Involution& sigma, const Options& opt) {
    const char* vkey = opt.machine() ? "sigma_vertex=" : "sigma_vertex ";
    const char* akey = opt.machine() ? "sigma_arrow=" : "sigma_arrow ";
    for (int v = 0; v < q.num_vertices(); ++v)
        if (sigma.vertex(v) > v)
            out << vkey << q.vertex_id(v) << " " << q.vertex_id(sigma.vertex(v)) << "\n";
    for (int a = 0; a < q.num_arrows(); ++a)
        if (sigma.arrow(a) > a)
            out << akey << q.arrow(a).id << " " << q.arrow(sigma.arrow(a)).id << "\n";
}

void emit_representation(std::ostream& out, const Quiver& q, const Representation& r,
                         const Options& opt, const std::string& name) {
    if (opt.machine()) {
        out << "representation=" << name << "\n";
        for (int v = 0; v < q.num_vertices(); ++v)
            out << "dim=" << q.vertex_id(v) << " " << r.dims[v] << "\n";
        for (int a = 0; a < q.num_arrows(); ++a) {
            if (r.mats[a].is_zero()) continue;
            out << "mat=" << q.arrow(a).id << " " << r.mats[a].rows() << "x" << r.mats[a].cols();
            for (int i = 0; i < r.mats[a].rows(); ++i)
                for (int j = 0; j < r.mats[a].cols(); ++j)
                    out << " " << to_string(r.mats[a].at(i, j));
            out << "\n";
        }
    } else {
        out << "# " << name << "\n" << print_representation(q, r);
    }
}

void emit_surface_info(std::ostream& out, const SurfaceInfo& info, const Options& opt) {
    if (opt.machine()) {
        out << "genus=" << info.genus << "\n";
        out << "boundary_components=" << info.boundary_components << "\n";
        out << "marked_per_boundary=";
        for (size_t k = 0; k < info.marked_per_boundary.size(); ++k)
            out << (k ? " " : "") << info.marked_per_boundary[k];
        out << "\n";
        out << "marked_points=" << info.marked_points << "\n";
        out << "punctures=" << info.punctures << "\n";
        out << "arcs=" << info.internal_arcs << "\n";
        out << "boundary_segments=" << info.boundary_edges << "\n";
        out << "triangles=" << info.triangles << "\n";
        out << "euler=" << info.euler << "\n";
        out << "connected=" << (info.connected ? 1 : 0) << "\n";
    } else {
        out << "genus " << info.genus << ", " << info.boundary_components
            << " boundary component(s), marked points per boundary";
        for (int m : info.marked_per_boundary) out << " " << m;
        out << ", " << info.punctures << " puncture(s)\n";
        out << info.internal_arcs << " arcs, " << info.boundary_edges << " boundary segments, "
            << info.triangles << " triangles, euler " << info.euler << "\n";
    }
}

int cmd_validate(const std::string& path, const Options& opt, std::ostream& out) {
    Triangulation t = parse_triangulation_text(slurp(path));
    SurfaceInfo info = validate_triangulation(t);
    if (opt.machine()) out << "command=validate\nstatus=ok\n";
    emit_surface_info(out, info, opt);
    auto blocks = block_decompose(t);
    for (const auto& b : blocks) {
        if (opt.machine())
            out << "block=" << t.tri(b.triangle).id << " " << block_type_name(b.type) << "\n";
        else
            out << "block " << t.tri(b.triangle).id << ": type " << block_type_name(b.type) << "\n";
    }
    return 0;
}

int cmd_qp(const std::string& path, const Options& opt, std::ostream& out) {
    Triangulation t = parse_triangulation_text(slurp(path));
    AdjacencyResult adj = adjacency_qp(t);
    if (opt.machine()) out << "command=qp\nstatus=ok\n";
    emit_quiver(out, adj.qp, opt);
    emit_sigma(out, adj.qp.quiver, adj.sigma, opt);
    return 0;
}

int cmd_skew(const std::string& path, const std::string& action, const Options& opt,
             std::ostream& out) {
    QuiverFile file = load_quiver(path, action);
    Involution sigma =
        Involution::from_pairs(file.qp.quiver, file.sigma_vertices, file.sigma_arrows);
    ActionPartition part = validate_action(file.qp.quiver, sigma);
    auto choice = find_admissible(file.qp.quiver, sigma);
    if (!choice) throw Error("NoAdmissibleChoice", "no admissible orbit choice exists");
    SkewResult ctx = skew_quiver(file.qp.quiver, sigma, *choice);
    ctx.potential_G = skew_potential(ctx, file.qp.potential);
    if (opt.machine()) out << "command=skew\nstatus=ok\n";
    if (opt.machine()) {
        out << "V=";
        for (size_t k = 0; k < part.v_list.size(); ++k)
            out << (k ? " " : "") << file.qp.quiver.vertex_id(part.v_list[k]);
        out << "\nW=";
        for (size_t k = 0; k < part.w_list.size(); ++k)
            out << (k ? " " : "") << file.qp.quiver.vertex_id(part.w_list[k]);
        out << "\noW=";
        for (size_t k = 0; k < choice->w_reps.size(); ++k)
            out << (k ? " " : "") << file.qp.quiver.vertex_id(choice->w_reps[k]);
        out << "\n";
    } else {
        out << "# skew group quiver\n";
    }
    emit_quiver(out, QuiverWithPotential{ctx.quiver_G, ctx.potential_G}, opt);
    // Provenance table.
    for (int v = 0; v < ctx.quiver_G.num_vertices(); ++v) {
        const auto& o = ctx.vertex_origin[v];
        std::string origin = file.qp.quiver.vertex_id(o.base_vertex);
        std::string kind = o.sign == 0 ? "orbit" : (o.sign > 0 ? "plus" : "minus");
        if (opt.machine())
            out << "vertex_origin=" << ctx.quiver_G.vertex_id(v) << " " << origin << " " << kind
                << "\n";
        else
            out << "# vertex " << ctx.quiver_G.vertex_id(v) << " from " << origin << " (" << kind
                << ")\n";
    }
    for (int a = 0; a < ctx.quiver_G.num_arrows(); ++a) {
        const auto& o = ctx.arrow_origin[a];
        std::string origin = file.qp.quiver.arrow(o.rep_arrow).id;
        std::string kind = o.sign == 0 ? "orbit" : (o.sign > 0 ? "plus" : "minus");
        if (opt.machine())
            out << "arrow_origin=" << ctx.quiver_G.arrow(a).id << " " << origin << " " << kind
                << "\n";
        else
            out << "# arrow " << ctx.quiver_G.arrow(a).id << " from " << origin << " (" << kind
                << ")\n";
    }
    Involution dual = dual_action(ctx);
    if (!opt.machine()) out << "# dual action\n";
    emit_sigma(out, ctx.quiver_G, dual, opt);
    return 0;
}

int cmd_cover(const std::string& path, const Options& opt, std::ostream& out) {
    Triangulation t = parse_triangulation_text(slurp(path));
    DoubleCover cover = double_cover(t);
    SurfaceInfo base_info = validate_triangulation(t);
    SurfaceInfo info = validate_triangulation(cover.cover);
    if (opt.machine()) {
        out << "command=cover\nstatus=ok\n";
        out << "crosscheck=ok\n";
        out << "base_arcs=" << base_info.internal_arcs << "\n";
        out << "cover_arcs=" << info.internal_arcs << "\n";
    } else {
        out << "# double cover (cross-check against the skew construction: ok)\n";
    }
    emit_surface_info(out, info, opt);
    if (!opt.machine()) out << "# cover triangulation\n";
    if (opt.machine()) {
        std::istringstream ss(print_triangulation(cover.cover));
        std::string line;
        while (std::getline(ss, line)) {
            auto space = line.find(' ');
            out << line.substr(0, space) << "=" << line.substr(space + 1) << "\n";
        }
    } else {
        out << print_triangulation(cover.cover);
    }
    if (!opt.machine()) out << "# cover quiver with potential\n";
    emit_quiver(out, cover.cover_qp.qp, opt);
    emit_sigma(out, cover.cover_qp.qp.quiver, cover.cover_quiver_sigma, opt);
    for (int a = 0; a < cover.cover_qp.qp.quiver.num_arrows(); ++a)
        if (cover.rescale[a] != 1) {
            if (opt.machine())
                out << "rescale=" << cover.cover_qp.qp.quiver.arrow(a).id << " "
                    << to_string(cover.rescale[a]) << "\n";
            else
                out << "# right-equivalence rescale " << cover.cover_qp.qp.quiver.arrow(a).id
                    << " by " << to_string(cover.rescale[a]) << "\n";
        }
    return 0;
}

int cmd_ginzburg_check(const std::string& path, const std::string& action, const Options& opt,
                       std::ostream& out) {
    QuiverFile file = load_quiver(path, action);
    Involution sigma =
        Involution::from_pairs(file.qp.quiver, file.sigma_vertices, file.sigma_arrows);
    auto choice = find_admissible(file.qp.quiver, sigma);
    if (!choice) throw Error("NoAdmissibleChoice", "no admissible orbit choice exists");
    GinzburgCompareReport report = skew_ginzburg_compare(file.qp, sigma, *choice);
    if (opt.machine()) {
        out << "command=ginzburg-check\nstatus=" << (report.ok ? "ok" : "mismatch") << "\n";
        for (const auto& e : report.entries)
            out << "generator=" << e.generator << " zeta=" << to_string(e.zeta)
                << " match=" << (e.match ? 1 : 0) << " skew={" << e.skew_side << "} ginzburg={"
                << e.ginzburg_side << "}\n";
    } else {
        out << "generator-by-generator comparison (zeta-rescaled):\n";
        for (const auto& e : report.entries)
            out << "  " << e.generator << "  zeta=" << to_string(e.zeta) << "  "
                << (e.match ? "ok" : "MISMATCH") << "  skew: " << e.skew_side
                << "  ginzburg: " << e.ginzburg_side << "\n";
        out << (report.ok ? "all generators match\n" : report.detail + "\n");
    }
    if (!report.ok) throw Error("MismatchAtGenerator", report.detail);
    return 0;
}

std::vector<std::string> split_tokens(const std::string& word) {
    std::vector<std::string> out;
    std::string current;
    for (char c : word) {
        if (c == ',') {
            if (!current.empty()) out.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) out.push_back(current);
    return out;
}

int cmd_module(const std::string& kind, const std::string& path, const std::string& word,
               const std::string& lambda_text, const std::string& lambda_sqrt_text, int power,
               bool do_induce, bool do_decompose, unsigned seed, const Options& opt,
               std::ostream& out) {
    Triangulation t = parse_triangulation_text(slurp(path));
    DoubleCover cover = double_cover(t);
    const Quiver& cq = cover.cover_qp.qp.quiver;
    CrossingWord w = make_crossing_word(cover.cover_qp, split_tokens(word), kind == "band");
    Representation r;
    Rat lambda_sqrt;
    bool have_sqrt = false;
    if (kind == "band") {
        Rat lambda = parse_rational(lambda_text);
        if (!lambda_sqrt_text.empty()) {
            lambda_sqrt = parse_rational(lambda_sqrt_text);
            have_sqrt = true;
            if (lambda_sqrt * lambda_sqrt != lambda)
                throw Error("BadLambdaSqrt", "--lambda-sqrt squared must equal --lambda");
        }
        r = band_module(cover.cover_qp, w, lambda, power);
    } else {
        r = string_module(cover.cover_qp, w);
    }
    if (opt.machine()) out << "command=" << kind << "\nstatus=ok\nword=" << word << "\n";
    emit_representation(out, cq, r, opt, "module over the cover quiver");
    if (do_induce || do_decompose) {
        Representation induced = induce_to_base(cover, r);
        const Quiver& bq = cover.base_qp.qp.quiver;
        emit_representation(out, bq, induced, opt, "induced module over the base quiver");
        if (do_decompose) {
            auto parts = decompose(bq, induced, seed);
            if (opt.machine()) out << "summands=" << parts.size() << "\n";
            else out << "# " << parts.size() << " indecomposable summand(s)\n";
            for (size_t k = 0; k < parts.size(); ++k)
                emit_representation(out, bq, parts[k], opt,
                                    "summand " + std::to_string(k + 1));
            if (have_sqrt && opt.machine())
                out << "lambda_sqrt=" << to_string(lambda_sqrt) << "\n";
        }
    }
    return 0;
}

int cmd_induce(const std::string& qpath, const std::string& apath, const std::string& rpath,
               const Options& opt, std::ostream& out) {
    QuiverFile file = load_quiver(qpath, apath);
    Involution sigma =
        Involution::from_pairs(file.qp.quiver, file.sigma_vertices, file.sigma_arrows);
    auto choice = find_admissible(file.qp.quiver, sigma);
    if (!choice) throw Error("NoAdmissibleChoice", "no admissible orbit choice exists");
    SkewResult ctx = skew_quiver(file.qp.quiver, sigma, *choice);
    Representation r = parse_representation_text(file.qp.quiver, slurp(rpath));
    Representation induced = induce(ctx, r);
    if (opt.machine()) out << "command=induce\nstatus=ok\n";
    emit_representation(out, ctx.quiver_G, induced, opt, "induced module on the skew quiver");
    return 0;
}

int cmd_decompose(const std::string& qpath, const std::string& rpath, unsigned seed,
                  const Options& opt, std::ostream& out) {
    QuiverFile file = load_quiver(qpath, "");
    Representation r = parse_representation_text(file.qp.quiver, slurp(rpath));
    auto parts = decompose(file.qp.quiver, r, seed);
    if (opt.machine()) out << "command=decompose\nstatus=ok\nsummands=" << parts.size() << "\n";
    else out << "# " << parts.size() << " indecomposable summand(s)\n";
    for (size_t k = 0; k < parts.size(); ++k)
        emit_representation(out, file.qp.quiver, parts[k], opt, "summand " + std::to_string(k + 1));
    return 0;
}

int cmd_isiso(const std::string& qpath, const std::string& r1path, const std::string& r2path,
              unsigned seed, const Options& opt, std::ostream& out) {
    QuiverFile file = load_quiver(qpath, "");
    Representation r1 = parse_representation_text(file.qp.quiver, slurp(r1path));
    Representation r2 = parse_representation_text(file.qp.quiver, slurp(r2path));
    bool iso = is_isomorphic(file.qp.quiver, r1, r2, seed);
    if (opt.machine())
        out << "command=isiso\nstatus=ok\nisomorphic=" << (iso ? 1 : 0) << "\n";
    else
        out << (iso ? "isomorphic\n" : "not isomorphic\n");
    return 0;
}

int cmd_classify(const std::string& path, bool strings, bool bands, int string_len,
                 int band_len, const Options& opt, std::ostream& out) {
    Triangulation t = parse_triangulation_text(slurp(path));
    DoubleCover cover = double_cover(t);
    CoverGraphs cg = cover_graphs(t, cover);
    if (opt.machine())
        out << "command=classify\nstatus=ok\nstring_len=" << string_len << "\nband_len="
            << band_len << "\n";
    if (strings) {
        StringClasses classes = classify_strings(cg.base, string_len);
        if (opt.machine()) {
            out << "string_pair_classes=" << classes.pair_classes << "\n";
            out << "string_symmetric_classes=" << classes.symmetric.size() << "\n";
            out << "string_tagged_arcs=" << classes.tagged_arcs() << "\n";
        } else {
            out << "strings up to length " << string_len << ": " << classes.pair_classes
                << " classes {gamma, gamma^-1}, " << classes.symmetric.size()
                << " symmetric classes (" << classes.tagged_arcs() << " tagged arcs)\n";
        }
        for (const auto& w : classes.symmetric) {
            if (opt.machine())
                out << "string_symmetric=" << format_word(cg.base, w) << "\n";
            else
                out << "  symmetric: " << format_word(cg.base, w) << "\n";
            // The two taggings e_P^eps v of the decomposition gamma = v^-1 e_P v.
            auto dec = symmetric_decomposition(cg.base, w);
            if (!dec) continue;
            for (int eps : {0, 1}) {
                GroupoidWord tagged = dec->v;
                if (eps) tagged.letters.push_back(Letter{dec->orb_edge, true});
                if (opt.machine())
                    out << "string_tagged=" << format_word(cg.base, reduce(cg.base, tagged))
                        << "\n";
                else
                    out << "    tagged arc: " << format_word(cg.base, reduce(cg.base, tagged))
                        << "\n";
            }
        }
    }
    if (bands) {
        BandClasses classes = classify_bands(cg.base, band_len);
        if (opt.machine()) {
            out << "band_asymmetric_pairs=" << classes.asymmetric_pairs << "\n";
            out << "band_symmetric_classes=" << classes.symmetric.size() << "\n";
            out << "band_in_image=" << classes.in_image_of_psi << "\n";
        } else {
            out << "bands up to length " << band_len << ": " << classes.asymmetric_pairs
                << " asymmetric pairs (parameter k*), " << classes.symmetric.size()
                << " symmetric classes (parameter k* minus +-1, plus four taggings each), "
                << classes.in_image_of_psi << " classes in the image of the cover\n";
        }
        for (const auto& c : classes.symmetric) {
            if (opt.machine())
                out << "band_symmetric=" << format_cyclic(cg.base, c) << "\n";
            else
                out << "  symmetric: " << format_cyclic(cg.base, c) << "\n";
        }
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"skew group quivers with potential, double covers and their modules",
                 "qpskew"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));

    std::string tri_path, quiver_path, action_path, rep1, rep2, word, lambda = "1", lambda_sqrt;
    int max_len = 4, power = 1;
    unsigned seed = 1;
    bool flag_induce = false, flag_decompose = false, flag_strings = false, flag_bands = false;

    auto* validate = app.add_subcommand("validate", "check a triangulation and report invariants");
    validate->add_option("file", tri_path)->required();

    auto* qp = app.add_subcommand("qp", "adjacency quiver with potential and exchange action");
    qp->add_option("file", tri_path)->required();

    auto* skew = app.add_subcommand("skew", "skew group quiver with potential of an action");
    skew->add_option("quiver", quiver_path)->required();
    skew->add_option("action", action_path);

    auto* cover = app.add_subcommand("cover", "unpunctured double cover of a triangulation");
    cover->add_option("file", tri_path)->required();

    auto* gz = app.add_subcommand("ginzburg-check",
                                  "compare the skew of the Ginzburg data with the Ginzburg of the skew");
    gz->add_option("quiver", quiver_path)->required();
    gz->add_option("action", action_path);

    auto* strcmd = app.add_subcommand("string", "string module of a crossing word on the cover");
    strcmd->add_option("file", tri_path)->required();
    strcmd->add_option("--word", word)->required();
    strcmd->add_flag("--induce", flag_induce);
    strcmd->add_flag("--decompose", flag_decompose);
    strcmd->add_option("--seed", seed);

    auto* bandcmd = app.add_subcommand("band", "band module of a cyclic word on the cover");
    bandcmd->add_option("file", tri_path)->required();
    bandcmd->add_option("--word", word)->required();
    bandcmd->add_option("--lambda", lambda);
    bandcmd->add_option("--lambda-sqrt", lambda_sqrt);
    bandcmd->add_option("--power", power);
    bandcmd->add_flag("--induce", flag_induce);
    bandcmd->add_flag("--decompose", flag_decompose);
    bandcmd->add_option("--seed", seed);

    auto* induce = app.add_subcommand("induce", "induce a representation along a skew construction");
    induce->add_option("quiver", quiver_path)->required();
    induce->add_option("action", action_path)->required();
    induce->add_option("rep", rep1)->required();

    auto* dec = app.add_subcommand("decompose", "split a representation into indecomposables");
    dec->add_option("quiver", quiver_path)->required();
    dec->add_option("rep", rep1)->required();
    dec->add_option("--seed", seed);

    auto* isiso = app.add_subcommand("isiso", "test two representations for isomorphism");
    isiso->add_option("quiver", quiver_path)->required();
    isiso->add_option("rep1", rep1)->required();
    isiso->add_option("rep2", rep2)->required();
    isiso->add_option("--seed", seed);

    auto* classify = app.add_subcommand("classify", "classify strings/bands on the orbifold");
    classify->add_option("file", tri_path)->required();
    classify->add_flag("--strings", flag_strings);
    classify->add_flag("--bands", flag_bands);
    auto* maxlen_opt = classify->add_option("--max-len", max_len);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(tri_path, opt, out);
        if (qp->parsed()) return cmd_qp(tri_path, opt, out);
        if (skew->parsed()) return cmd_skew(quiver_path, action_path, opt, out);
        if (cover->parsed()) return cmd_cover(tri_path, opt, out);
        if (gz->parsed()) return cmd_ginzburg_check(quiver_path, action_path, opt, out);
        if (strcmd->parsed())
            return cmd_module("string", tri_path, word, lambda, lambda_sqrt, power, flag_induce,
                              flag_decompose, seed, opt, out);
        if (bandcmd->parsed())
            return cmd_module("band", tri_path, word, lambda, lambda_sqrt, power, flag_induce,
                              flag_decompose, seed, opt, out);
        if (induce->parsed()) return cmd_induce(quiver_path, action_path, rep1, opt, out);
        if (dec->parsed()) return cmd_decompose(quiver_path, rep1, seed, opt, out);
        if (isiso->parsed()) return cmd_isiso(quiver_path, rep1, rep2, seed, opt, out);
        if (classify->parsed()) {
            if (!flag_strings && !flag_bands) flag_strings = flag_bands = true;
            // Default enumeration bounds: 4 for strings, 6 for bands.
            int string_len = maxlen_opt->count() ? max_len : 4;
            int band_len = maxlen_opt->count() ? max_len : 6;
            return cmd_classify(tri_path, flag_strings, flag_bands, string_len, band_len, opt,
                                out);
        }
    } catch (const Error& e) {
        err << e.name() << "\n" << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "InternalError\n" << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace qpskew::cli

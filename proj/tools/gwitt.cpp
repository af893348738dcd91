// Command-line front end: parse group/coefficient/truncation inputs, run Witt
// vector computations and emit structured text reports.
//
// Exit codes: 0 success, 2 validation error, 3 verification failure,
// 4 resource bound exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "gwitt/io.hpp"
#include "gwitt/mackey.hpp"
#include "gwitt/reproduce.hpp"
#include "gwitt/witt.hpp"

namespace {

constexpr const char* kHeader = "gwitt 1\n";

struct Job {
    std::string group = "d6";
    std::string subgroup = "full";
    std::string coeff = "Z";
    std::string trunc = "all";
    std::string reps;
    std::string out;
    std::string element;
    std::string element2;
    unsigned long seed = 20240901;
    long bound = gwitt::kDefaultTermBound;
};

void add_common(CLI::App* cmd, Job& job) {
    cmd->add_option("--group", job.group, "builtin name (c2 c3 c4 c5 c6 s3 d6 d8 a4) or file");
    cmd->add_option("--subgroup", job.subgroup, "ambient subgroup H: 'full' or {elems}");
    cmd->add_option("--coeff", job.coeff, "coefficients: Z | Z/n | rank b rel <file>");
    cmd->add_option("--trunc", job.trunc, "truncation set: all | top | none | { {..}, .. }");
    cmd->add_option("--seed", job.seed, "seed for randomized verification");
    cmd->add_option("--reps", job.reps, "coset representative override file");
    cmd->add_option("--out", job.out, "output path (default stdout)");
    cmd->add_option("--bound", job.bound, "term-count safety bound");
}

struct Context {
    std::unique_ptr<gwitt::GroupCtx> g;
    int h = -1;
    gwitt::TruncationSet s;
    gwitt::AbPresentation pres;
    std::map<int, std::vector<int>> overrides;
};

Context make_context(const Job& job) {
    Context c;
    c.g = std::make_unique<gwitt::GroupCtx>(gwitt::load_group(job.group));
    if (job.subgroup == "full") {
        c.h = c.g->full_id();
    } else {
        size_t pos = 0;
        std::vector<int> elems = gwitt::parse_brace_list(job.subgroup, pos);
        std::sort(elems.begin(), elems.end());
        c.h = c.g->sub_id_of(elems);
    }
    c.s = gwitt::parse_truncation(*c.g, c.h, job.trunc);
    c.pres = gwitt::parse_coefficients(job.coeff);
    if (!job.reps.empty()) {
        std::ifstream f(job.reps);
        if (!f) throw gwitt::validation_error("cannot read reps file " + job.reps);
        c.overrides = gwitt::parse_rep_overrides(*c.g, f);
    }
    return c;
}

void emit(const Job& job, const std::string& text) {
    if (job.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(job.out);
        if (!f) throw gwitt::validation_error("cannot write " + job.out);
        f << text;
    }
}

int run_witt(const Job& job) {
    Context c = make_context(job);
    gwitt::WittGroupFP w = gwitt::build_fp(*c.g, c.s, c.pres, job.bound, true, c.overrides);
    std::ostringstream out;
    out << kHeader;
    out << "witt_group { context: group order " << c.g->group().order() << ", H "
        << gwitt::subgroup_text(*c.g, c.h) << ", |can(S)| " << c.s.canon.size() << ", coeff "
        << job.coeff << " }\n";
    out << "free rank: " << w.free_model.rank << "\n";
    out << "basis manifest:\n";
    int idx = 0;
    for (const auto& lv : w.ctx().levels())
        for (const auto& rep : lv.orbits.reps) {
            out << "  " << idx++ << ": V " << gwitt::subgroup_text(*c.g, lv.v) << " word (";
            for (size_t i = 0; i < rep.size(); ++i)
                out << (i ? "," : "") << w.ctx().Y().label(rep[i]);
            out << ")\n";
        }
    out << "invariant_factors: [";
    auto fs = w.invariant_factors();
    for (size_t i = 0; i < fs.size(); ++i) out << (i ? "," : "") << fs[i].get_str();
    out << "]\n";
    out << "group: " << gwitt::factors_text(fs) << "\n";
    out << "order: " << (w.is_finite() ? w.order().get_str() : std::string("infinite")) << "\n";
    emit(job, out.str());
    return 0;
}

int run_ghost(const Job& job) {
    Context c = make_context(job);
    auto ctx = std::make_shared<gwitt::WittContext>(*c.g, c.s, gwitt::GeneratorSet{c.pres.rank, {}},
                                                    job.bound, true, c.overrides);
    std::ifstream f(job.element);
    if (!f) throw gwitt::validation_error("cannot read element file " + job.element);
    gwitt::ComponentFamily n = gwitt::parse_family(*ctx, f);
    gwitt::GhostVector w = gwitt::ghost_map(*ctx, n);
    std::ostringstream out;
    out << kHeader << "ghost vector:\n" << gwitt::ghost_to_text(*ctx, w);
    emit(job, out.str());
    return 0;
}

int run_dwork(const Job& job) {
    Context c = make_context(job);
    auto ctx = std::make_shared<gwitt::WittContext>(*c.g, c.s, gwitt::GeneratorSet{c.pres.rank, {}},
                                                    job.bound, true, c.overrides);
    std::ifstream f(job.element);
    if (!f) throw gwitt::validation_error("cannot read element file " + job.element);
    gwitt::ComponentFamily n = gwitt::parse_family(*ctx, f);
    gwitt::GhostVector a;
    for (auto& [v, t] : n.comp) {
        int li = ctx->level_of(v);
        if (!gwitt::fixed_by(*c.g, t, c.g->sub(ctx->level(li).n_hv)))
            throw gwitt::validation_error("dwork: component at " + gwitt::subgroup_text(*c.g, v) +
                                          " is not N_H(V)-fixed; not a ghost group element");
        a.comp.emplace(v, t);
    }
    gwitt::DworkReport rep = gwitt::dwork_check(*ctx, a);
    std::ostringstream out;
    out << kHeader;
    if (rep.ok) {
        gwitt::OrbitCoords x = gwitt::ghost_preimage(*ctx, a);
        out << "dwork: pass (ghost image)\npreimage coordinates: [";
        for (size_t i = 0; i < x.x.size(); ++i) out << (i ? "," : "") << x.x[i].get_str();
        out << "]\n";
        emit(job, out.str());
        return 0;
    }
    out << "dwork: FAIL at subgroup " << gwitt::subgroup_text(*c.g, rep.failed_u) << "\n";
    out << "congruence sum: " << gwitt::to_literal(rep.offending_sum, ctx->Y()) << "\n";
    emit(job, out.str());
    return 3;
}

std::vector<gwitt::Int> read_coords(const std::string& path, int n) {
    std::ifstream f(path);
    if (!f) throw gwitt::validation_error("cannot read element file " + path);
    std::vector<gwitt::Int> x;
    std::string tok;
    while (f >> tok) x.emplace_back(tok);
    if (static_cast<int>(x.size()) != n)
        throw gwitt::validation_error("element: expected " + std::to_string(n) + " coordinates");
    return x;
}

std::string coords_text(const std::vector<gwitt::Int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
    return s + "]";
}

int run_op(const Job& job, const std::string& op, const std::string& arg) {
    Context c = make_context(job);
    gwitt::WittGroupFP w = gwitt::build_fp(*c.g, c.s, c.pres, job.bound, true, c.overrides);
    std::ostringstream out;
    out << kHeader;

    auto sub_of = [&](const std::string& text) {
        size_t pos = 0;
        std::vector<int> elems = gwitt::parse_brace_list(text, pos);
        std::sort(elems.begin(), elems.end());
        return c.g->sub_id_of(elems);
    };

    if (op == "F" || op == "V" || op == "R" || op == "c") {
        if (op == "F") {
            int k = sub_of(arg);
            gwitt::WittGroupFP dst =
                gwitt::build_fp(*c.g, gwitt::restrict_truncation(*c.g, c.s, k), c.pres, job.bound);
            gwitt::WittElement x{&w, read_coords(job.element, w.residue_rank())};
            gwitt::WittElement y = gwitt::frobenius(x, dst);
            bool square = gwitt::tilde_frobenius(w.ctx(), dst.ctx(), gwitt::ghost_of(x)) ==
                          gwitt::ghost_of(y);
            out << "F -> " << coords_text(y.res) << "\n";
            out << "ghost square: " << (square ? "ok" : "FAIL") << "\n";
            emit(job, out.str());
            return square ? 0 : 3;
        }
        if (op == "V") {
            int k = sub_of(arg); // element lives over K; result over H
            gwitt::WittGroupFP src =
                gwitt::build_fp(*c.g, gwitt::restrict_truncation(*c.g, c.s, k), c.pres, job.bound);
            gwitt::WittElement x{&src, read_coords(job.element, src.residue_rank())};
            gwitt::WittElement y = gwitt::verschiebung(x, w);
            bool square = gwitt::tilde_verschiebung(src.ctx(), w.ctx(), gwitt::ghost_of(x)) ==
                          gwitt::ghost_of(y);
            out << "V -> " << coords_text(y.res) << "\n";
            out << "ghost square: " << (square ? "ok" : "FAIL") << "\n";
            emit(job, out.str());
            return square ? 0 : 3;
        }
        if (op == "R") {
            gwitt::TruncationSet sp = gwitt::parse_truncation(*c.g, c.h, arg);
            gwitt::WittGroupFP dst = gwitt::build_fp(*c.g, sp, c.pres, job.bound);
            gwitt::WittElement x{&w, read_coords(job.element, w.residue_rank())};
            gwitt::WittElement y = gwitt::truncate(x, dst);
            bool square = gwitt::tilde_truncation(w.ctx(), dst.ctx(), gwitt::ghost_of(x)) ==
                          gwitt::ghost_of(y);
            out << "R -> " << coords_text(y.res) << "\n";
            out << "ghost square: " << (square ? "ok" : "FAIL") << "\n";
            emit(job, out.str());
            return square ? 0 : 3;
        }
        int g_elem = std::stoi(arg);
        gwitt::TruncationSet sp = gwitt::conjugate_truncation(*c.g, c.s, g_elem);
        gwitt::WittGroupFP dst = gwitt::build_fp(*c.g, sp, c.pres, job.bound);
        gwitt::WittElement x{&w, read_coords(job.element, w.residue_rank())};
        gwitt::WittElement y = gwitt::conjugation(x, g_elem, dst);
        bool square =
            gwitt::tilde_conjugation(w.ctx(), dst.ctx(), g_elem, gwitt::ghost_of(x)) ==
            gwitt::ghost_of(y);
        out << "c -> " << coords_text(y.res) << "\n";
        out << "ghost square: " << (square ? "ok" : "FAIL") << "\n";
        emit(job, out.str());
        return square ? 0 : 3;
    }
    if (op == "tau") {
        std::ifstream f(job.element);
        if (!f) throw gwitt::validation_error("cannot read element file " + job.element);
        std::stringstream buf;
        buf << f.rdbuf();
        gwitt::TensorElement m = gwitt::parse_tensor_literal(
            buf.str(), w.ctx().gv(c.h), c.pres.rank);
        gwitt::WittElement y = gwitt::teichmuller(w, m);
        bool square = gwitt::tilde_teichmuller(w.ctx(), m) == gwitt::ghost_of(y);
        out << "tau -> " << coords_text(y.res) << "\n";
        out << "ghost square: " << (square ? "ok" : "FAIL") << "\n";
        emit(job, out.str());
        return square ? 0 : 3;
    }
    if (op == "star") {
        gwitt::AbPresentation tp = gwitt::tensor_presentation(c.pres, c.pres);
        gwitt::WittGroupFP dst = gwitt::build_fp(*c.g, c.s, tp, job.bound);
        gwitt::WittElement x{&w, read_coords(job.element, w.residue_rank())};
        gwitt::WittElement y{&w, read_coords(job.element2, w.residue_rank())};
        gwitt::WittElement z = gwitt::external_product(x, y, dst);
        bool square = gwitt::tilde_star(w.ctx(), w.ctx(), dst.ctx(), gwitt::ghost_of(x),
                                        gwitt::ghost_of(y)) == gwitt::ghost_of(z);
        out << "star -> " << coords_text(z.res) << "\n";
        out << "ghost square: " << (square ? "ok" : "FAIL") << "\n";
        emit(job, out.str());
        return square ? 0 : 3;
    }
    throw gwitt::validation_error("unknown operator " + op);
}

int run_mackey(const Job& job) {
    Context c = make_context(job);
    gwitt::WittTower tower(*c.g, c.s, c.pres, job.bound);
    gwitt::MackeyTable table = gwitt::assemble(tower);
    gwitt::Report rep = gwitt::verify_axioms(tower, table, 2, job.seed);
    std::ostringstream out;
    out << kHeader << "mackey levels (canonical K, invariant factors):\n";
    for (size_t i = 0; i < table.canon.size(); ++i)
        out << "  " << gwitt::subgroup_text(*c.g, table.canon[i]) << ": "
            << gwitt::factors_text(table.factors[i]) << "\n";
    auto mat_text = [](const gwitt::IntMatrix& m) {
        std::string s = "[";
        for (int i = 0; i < m.rows(); ++i) {
            if (i) s += "; ";
            for (int j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m.at(i, j).get_str();
        }
        return s + "]";
    };
    out << "transfer/restriction matrices:\n";
    for (const auto& [key, m] : table.tr)
        out << "  tr " << gwitt::subgroup_text(*c.g, table.canon[key.second]) << " -> "
            << gwitt::subgroup_text(*c.g, table.canon[key.first]) << ": " << mat_text(m) << "\n";
    for (const auto& [key, m] : table.res)
        out << "  res " << gwitt::subgroup_text(*c.g, table.canon[key.first]) << " -> "
            << gwitt::subgroup_text(*c.g, table.canon[key.second]) << ": " << mat_text(m) << "\n";
    out << "weyl conjugations:\n";
    for (const auto& [i, mats] : table.weyl)
        for (const auto& [n, m] : mats)
            out << "  c_" << n << " on " << gwitt::subgroup_text(*c.g, table.canon[i]) << ": "
                << mat_text(m) << "\n";
    out << "axioms: " << (rep.ok ? "pass" : "FAIL") << " (" << rep.checks << " checks)\n";
    for (const auto& fmsg : rep.failures) out << "  failure: " << fmsg << "\n";
    emit(job, out.str());
    return rep.ok ? 0 : 3;
}

int run_reproduce(const Job& job, const std::string& target) {
    if (target != "d6-appendix")
        throw gwitt::validation_error("unknown reproduce target " + target);
    gwitt::ReproduceResult res = gwitt::reproduce_d6_appendix(job.bound);
    std::ostringstream out;
    out << kHeader << res.report;
    out << "golden diff: " << (res.ok ? "identical" : res.detail) << "\n";
    emit(job, out.str());
    return res.ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation of G-typical Witt vectors with coefficients"};
    app.require_subcommand(1);

    Job job;
    std::string op_name, op_arg, target = "d6-appendix";

    CLI::App* witt = app.add_subcommand("witt", "compute a Witt group");
    add_common(witt, job);

    CLI::App* ghost = app.add_subcommand("ghost", "apply the ghost map to a component family");
    add_common(ghost, job);
    ghost->add_option("element", job.element, "component family file")->required();

    CLI::App* dwork = app.add_subcommand("dwork", "check the Dwork congruences");
    add_common(dwork, job);
    dwork->add_option("element", job.element, "ghost vector file")->required();

    CLI::App* opc = app.add_subcommand("op", "apply a Witt operator");
    add_common(opc, job);
    opc->add_option("--op", op_name, "F|V|c|R|tau|star")->required();
    opc->add_option("--arg", op_arg, "operator argument (subgroup, element index, truncation)");
    opc->add_option("element", job.element, "element coordinates file (or tensor literal for tau)");
    opc->add_option("element2", job.element2, "second element (star)");

    CLI::App* mackey = app.add_subcommand("mackey", "assemble and verify the Witt Mackey functor");
    add_common(mackey, job);

    CLI::App* repro = app.add_subcommand("reproduce", "reproduce a published computation");
    add_common(repro, job);
    repro->add_option("target", target, "d6-appendix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (witt->parsed()) return run_witt(job);
        if (ghost->parsed()) return run_ghost(job);
        if (dwork->parsed()) return run_dwork(job);
        if (opc->parsed()) return run_op(job, op_name, op_arg);
        if (mackey->parsed()) return run_mackey(job);
        if (repro->parsed()) return run_reproduce(job, target);
    } catch (const gwitt::validation_error& e) {
        std::cerr << "error: validation " << e.what() << "\n";
        return 2;
    } catch (const gwitt::resource_error& e) {
        std::cerr << "error: resource " << e.what() << "\n";
        return 4;
    } catch (const gwitt::verification_error& e) {
        std::cerr << "error: verification " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: validation " << e.what() << "\n";
        return 2;
    }
    return 0;
}

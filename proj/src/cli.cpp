#include "qsr/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qsr/euler.hpp"
#include "qsr/homotopy.hpp"
#include "qsr/io.hpp"
#include "qsr/moment.hpp"
#include "qsr/subrep.hpp"

namespace qsr {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << content;
}

QuiverSetup load_setup(const std::string& path) {
    QuiverSetup setup = parse_quiver_file(read_file(path));
    const ValidationReport report = validate_setup(setup);
    if (!report.ok()) throw DomainError(path + ": " + report.errors.front());
    return setup;
}

Representation load_representation(const std::string& path, const QuiverSetup& setup) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw DomainError(path + ": " + e.what());
    }
    try {
        return representation_from_json(doc, setup.quiver, setup.dims);
    } catch (const DomainError& e) {
        throw DomainError(path + ": " + e.what());
    }
}

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string dimvec_str(const DimensionVector& v) {
    std::string s = "(";
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(v[j]);
    }
    return s + ")";
}

json dimvec_json(const Quiver& quiver, const DimensionVector& v) {
    json obj = json::object();
    for (std::size_t j = 0; j < v.size(); ++j) obj[quiver.vertices[j]] = v[j];
    return obj;
}

DimensionVector parse_sub_args(const QuiverSetup& setup, const std::vector<std::string>& kvs) {
    DimensionVector sub;
    sub.v.assign(setup.dims.size(), 0);
    for (const std::string& kv : kvs) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
            throw DomainError("--sub expects vertexid=count, got '" + kv + "'");
        const std::string id = kv.substr(0, eq);
        const auto j = setup.quiver.index_of(id);
        if (!j) throw DomainError("--sub names unknown vertex '" + id + "'");
        const auto value = Rational::parse(kv.substr(eq + 1));
        if (!value || !value->is_integer() || value->num() < 0)
            throw DomainError("--sub value for '" + id + "' must be a nonnegative integer");
        sub.v[static_cast<std::size_t>(*j)] = value->num();
    }
    if (!sub.fits_within(setup.dims))
        throw DomainError("--sub exceeds the ambient dimension vector");
    return sub;
}

void emit(std::ostream& out, bool want_json, const std::string& text, const json& doc) {
    if (want_json)
        out << doc.dump(2) << "\n";
    else
        out << text;
}

json base_doc(const char* command) {
    json doc;
    doc["schema_version"] = 1;
    doc["command"] = command;
    return doc;
}

// ---- subcommand handlers ----------------------------------------------

void cmd_gen(const QuiverSetup& setup, const std::string& out_path, std::ostream& out) {
    const std::string text = serialize_quiver_file(setup);
    if (out_path.empty())
        out << text;
    else {
        write_file(out_path, text);
        out << "wrote " << out_path << " (" << setup.quiver.vertex_count() << " vertices, "
            << setup.quiver.edge_count() << " edges)\n";
    }
}

void cmd_slope(const std::string& file, const std::vector<std::string>& sub_args, bool want_json,
               std::ostream& out) {
    const QuiverSetup setup = load_setup(file);
    DimensionVector v = setup.dims;
    if (!sub_args.empty()) v = parse_sub_args(setup, sub_args);
    const SlopeReport rep = slope_report(v, setup.alpha);

    json doc = base_doc("slope");
    doc["vector"] = dimvec_json(setup.quiver, v);
    doc["rank"] = rep.rank;
    doc["degree"] = rep.degree.str();
    doc["slope"] = rep.slope.str();

    std::ostringstream text;
    text << "vector = " << dimvec_str(v) << "\n"
         << "rank = " << rep.rank << "\n"
         << "degree = " << rep.degree.str() << "\n"
         << "slope = " << rep.slope.str() << "\n";
    emit(out, want_json, text.str(), doc);
}

void cmd_destab(const std::string& file, bool strict, bool want_json, std::ostream& out) {
    const QuiverSetup setup = load_setup(file);
    DestabilizerOptions opts;
    opts.strict = strict;
    const DestabilizerList list = destabilizing_dimension_vectors(setup, opts);

    json doc = base_doc("destab");
    doc["shift"] = list.shift.str();
    doc["strict"] = strict;
    doc["count"] = list.entries.size();
    doc["candidates"] = json::array();

    std::ostringstream text;
    text << "shift = " << list.shift.str() << "\n"
         << "count = " << list.entries.size() << "\n";
    for (const Destabilizer& d : list.entries) {
        const HomDims h = hom_dims(setup.quiver, setup.dims, d.dims);
        const long long m2chi = 2 * (h.hom1_complex - h.hom0_complex);
        json jc;
        jc["v"] = dimvec_json(setup.quiver, d.dims);
        jc["rank"] = d.report.rank;
        jc["degree"] = d.report.degree.str();
        jc["slope"] = d.report.slope.str();
        jc["minus_two_chi"] = m2chi;
        doc["candidates"].push_back(std::move(jc));
        text << "  " << dimvec_str(d.dims) << "  rank=" << d.report.rank
             << " degree=" << d.report.degree.str() << " slope=" << d.report.slope.str()
             << " -2chi=" << m2chi << "\n";
    }
    emit(out, want_json, text.str(), doc);
}

void cmd_dmin(const std::string& file, bool want_json, std::ostream& out) {
    const QuiverSetup setup = load_setup(file);
    const DminReport report = d_min(setup);

    json doc = base_doc("dmin");
    doc["shift"] = report.shift.str();
    doc["candidates"] = report.per_candidate.size();
    doc["d_min"] = report.d_min ? json(*report.d_min) : json(nullptr);
    doc["witness"] =
        report.witness ? dimvec_json(setup.quiver, *report.witness) : json(nullptr);
    doc["per_candidate"] = json::array();
    for (const DminCandidate& c : report.per_candidate) {
        json jc;
        jc["v"] = dimvec_json(setup.quiver, c.dims);
        jc["minus_two_chi"] = c.minus_two_chi;
        jc["slope"] = c.report.slope.str();
        doc["per_candidate"].push_back(std::move(jc));
    }

    std::ostringstream text;
    if (report.d_min) {
        text << "d_min = " << *report.d_min << "\n"
             << "witness = " << dimvec_str(*report.witness) << "\n";
    } else {
        text << "d_min = +infinity (no destabilizing sub-dimension vectors)\n";
    }
    text << "candidates = " << report.per_candidate.size() << "\n";
    emit(out, want_json, text.str(), doc);
}

void cmd_homotopy(const std::string& file, long long max_degree, bool want_json,
                  std::ostream& out) {
    const QuiverSetup setup = load_setup(file);
    const HomotopyReport report = homotopy_report(setup, max_degree);

    json doc = base_doc("homotopy");
    doc["max_degree"] = max_degree;
    doc["d_min"] = report.d_min ? json(*report.d_min) : json(nullptr);
    doc["entries"] = json::array();

    std::ostringstream text;
    if (report.d_min)
        text << "d_min = " << *report.d_min << "\n";
    else
        text << "d_min = +infinity\n";
    for (const HomotopyEntry& e : report.entries) {
        json je;
        je["n"] = e.degree;
        je["conclusive"] = e.conclusive;
        if (e.conclusive) {
            je["rep_group"] = e.rep_group.str();
            je["moduli_group"] = e.moduli_group.str();
            if (e.degree == 0)
                text << "n=0: stable locus and moduli space are connected\n";
            else
                text << "n=" << e.degree << ": pi_n(stable locus) = " << e.rep_group.str()
                     << "; pi_n(moduli space) = " << e.moduli_group.str() << "\n";
        } else {
            text << "n=" << e.degree << ": no conclusion\n";
        }
        doc["entries"].push_back(std::move(je));
    }
    emit(out, want_json, text.str(), doc);
}

void cmd_stability(const std::string& file, const std::string& rep_file, int restarts,
                   long long max_iters, double tol, std::uint64_t seed, bool want_json,
                   std::ostream& out) {
    const QuiverSetup setup = load_setup(file);
    const Representation rep = load_representation(rep_file, setup);

    VerdictOptions opts;
    opts.search.restarts = restarts;
    opts.search.max_iters = max_iters;
    opts.search.tol = tol;
    opts.search.seed = seed;
    const StabilityVerdict verdict = stability_verdict(rep, setup, opts);

    json doc = base_doc("stability");
    doc["verdict"] = verdict_name(verdict.verdict);
    doc["flow_energy"] = round12(verdict.flow_energy);
    doc["flow_converged"] = verdict.flow_converged;
    if (verdict.evidence) {
        json je;
        je["v"] = dimvec_json(setup.quiver, verdict.evidence->sub);
        je["slope"] = verdict.evidence->slope.str();
        je["residual"] = round12(verdict.evidence->residual);
        doc["evidence"] = std::move(je);
    } else {
        doc["evidence"] = nullptr;
    }

    std::ostringstream text;
    text << "verdict = " << verdict_name(verdict.verdict) << "\n";
    if (verdict.evidence)
        text << "witness = " << dimvec_str(verdict.evidence->sub)
             << "  (slope " << verdict.evidence->slope.str() << ", residual "
             << fmt12(verdict.evidence->residual) << ")\n";
    text << "flow_energy = " << fmt12(verdict.flow_energy) << "\n";
    emit(out, want_json, text.str(), doc);
}

void cmd_flow(const std::string& file, const std::string& rep_file, long long max_steps,
              double tol, const std::string& trace_path, bool want_json, std::ostream& out) {
    const QuiverSetup setup = load_setup(file);
    const Representation rep = load_representation(rep_file, setup);

    FlowOptions opts;
    opts.max_steps = max_steps;
    opts.grad_tol = tol;
    QuiverSetup normalized = setup;
    normalized.alpha = normalize_alpha(setup);
    const FlowResult result = flow(rep, normalized.alpha, opts);

    if (!trace_path.empty()) {
        std::ostringstream csv;
        csv << "step,time,energy,grad_norm\n";
        for (const TracePoint& p : result.trace)
            csv << p.step << "," << fmt12(p.time) << "," << fmt12(p.energy) << ","
                << fmt12(p.grad_norm) << "\n";
        write_file(trace_path, csv.str());
    }

    json doc = base_doc("flow");
    doc["converged"] = result.converged;
    doc["iterations"] = result.iterations;
    doc["final_energy"] = round12(result.final_energy);
    doc["final_grad_norm"] = round12(result.final_grad_norm);

    std::ostringstream text;
    text << "converged = " << (result.converged ? "true" : "false") << "\n"
         << "iterations = " << result.iterations << "\n"
         << "final_energy = " << fmt12(result.final_energy) << "\n"
         << "final_grad_norm = " << fmt12(result.final_grad_norm) << "\n";
    emit(out, want_json, text.str(), doc);
}

void cmd_plant(const std::string& file, const std::vector<std::string>& sub_args,
               std::uint64_t seed, const std::string& out_path, std::ostream& out) {
    const QuiverSetup setup = load_setup(file);
    std::optional<DimensionVector> sub;
    if (!sub_args.empty()) {
        sub = parse_sub_args(setup, sub_args);
        if (sub->is_zero() || *sub == setup.dims)
            throw DomainError("--sub must be a proper nonzero sub-dimension vector");
    }
    const Representation rep = plant_instance(setup, sub, seed);
    write_file(out_path, representation_to_json(rep).dump(2) + "\n");
    out << "wrote " << out_path << "\n";
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quiver representation stability toolkit"};
    app.name("quiverstab");
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a quiver setup file");
    gen->require_subcommand(1);
    long long adhm_k = 0, adhm_n = 0;
    std::string gen_out;
    auto* gen_adhm_cmd = gen->add_subcommand("adhm", "framed-instanton quiver (dims (k,1))");
    gen_adhm_cmd->add_option("--k", adhm_k, "dimension at the framed vertex")->required();
    gen_adhm_cmd->add_option("--n", adhm_n, "number of arrows each way")->required();
    gen_adhm_cmd->add_option("-o,--output", gen_out, "write to file instead of stdout");
    std::string sides_csv;
    auto* gen_poly_cmd = gen->add_subcommand("polygon", "star quiver for n-gon spaces");
    gen_poly_cmd->add_option("--sides", sides_csv, "comma-separated side lengths (rationals)")
        ->required();
    gen_poly_cmd->add_option("-o,--output", gen_out, "write to file instead of stdout");

    // shared option storage
    std::string file, rep_file, trace_path, out_path;
    std::vector<std::string> sub_args;
    bool want_json = false, strict = false;
    long long max_degree = 5, max_steps = 100'000, max_iters = 400;
    int restarts = 20;
    double tol_stability = 1e-8, tol_flow = 1e-6;
    std::uint64_t seed = 0;

    auto* slope_cmd = app.add_subcommand("slope", "rank/degree/slope of a (sub-)dimension vector");
    slope_cmd->add_option("file", file, "quiver setup file")->required();
    slope_cmd->add_option("--sub", sub_args, "sub-dimension entries vertexid=k (default 0)");
    slope_cmd->add_flag("--json", want_json, "machine-readable output");

    auto* destab_cmd = app.add_subcommand("destab", "destabilizing sub-dimension vectors");
    destab_cmd->add_option("file", file, "quiver setup file")->required();
    destab_cmd->add_flag("--strict", strict, "keep only strictly positive slopes");
    destab_cmd->add_flag("--json", want_json, "machine-readable output");

    auto* dmin_cmd = app.add_subcommand("dmin", "minimal -2*chi over destabilizing vectors");
    dmin_cmd->add_option("file", file, "quiver setup file")->required();
    dmin_cmd->add_flag("--json", want_json, "machine-readable output");

    auto* homotopy_cmd = app.add_subcommand("homotopy", "low-degree homotopy conclusions");
    homotopy_cmd->add_option("file", file, "quiver setup file")->required();
    homotopy_cmd->add_option("--max-degree", max_degree, "highest degree to report (default 5)");
    homotopy_cmd->add_flag("--json", want_json, "machine-readable output");

    auto* stability_cmd = app.add_subcommand("stability", "certify a representation numerically");
    stability_cmd->add_option("file", file, "quiver setup file")->required();
    stability_cmd->add_option("--rep", rep_file, "representation JSON file")->required();
    stability_cmd->add_option("--restarts", restarts, "search restarts per candidate");
    stability_cmd->add_option("--max-iters", max_iters, "descent iterations per restart");
    stability_cmd->add_option("--tol", tol_stability, "residual acceptance tolerance");
    stability_cmd->add_option("--seed", seed, "search seed");
    stability_cmd->add_flag("--json", want_json, "machine-readable output");

    auto* flow_cmd = app.add_subcommand("flow", "descent flow of the moment-map energy");
    flow_cmd->add_option("file", file, "quiver setup file")->required();
    flow_cmd->add_option("--rep", rep_file, "representation JSON file")->required();
    flow_cmd->add_option("--max-steps", max_steps, "step budget");
    flow_cmd->add_option("--tol", tol_flow, "gradient-norm convergence tolerance");
    flow_cmd->add_option("--trace", trace_path, "write step,time,energy,grad_norm CSV");
    flow_cmd->add_flag("--json", want_json, "machine-readable output");

    auto* plant_cmd = app.add_subcommand("plant", "generate a seeded test representation");
    plant_cmd->add_option("file", file, "quiver setup file")->required();
    plant_cmd->add_option("--sub", sub_args, "plant an invariant tuple of these dimensions");
    plant_cmd->add_option("--seed", seed, "generator seed");
    plant_cmd->add_option("-o,--output", out_path, "representation JSON output file")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("quiverstab");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) {
            if (gen_adhm_cmd->parsed()) {
                cmd_gen(gen_adhm(adhm_k, adhm_n), gen_out, out);
            } else {
                std::vector<Rational> sides;
                std::size_t pos = 0;
                while (pos <= sides_csv.size()) {
                    const std::size_t comma = sides_csv.find(',', pos);
                    const std::string item = sides_csv.substr(
                        pos, comma == std::string::npos ? std::string::npos : comma - pos);
                    const auto r = Rational::parse(item);
                    if (!r) throw DomainError("malformed side length '" + item + "'");
                    sides.push_back(*r);
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
                cmd_gen(gen_polygon(sides), gen_out, out);
            }
        } else if (slope_cmd->parsed()) {
            cmd_slope(file, sub_args, want_json, out);
        } else if (destab_cmd->parsed()) {
            cmd_destab(file, strict, want_json, out);
        } else if (dmin_cmd->parsed()) {
            cmd_dmin(file, want_json, out);
        } else if (homotopy_cmd->parsed()) {
            cmd_homotopy(file, max_degree, want_json, out);
        } else if (stability_cmd->parsed()) {
            cmd_stability(file, rep_file, restarts, max_iters, tol_stability, seed, want_json,
                          out);
        } else if (flow_cmd->parsed()) {
            cmd_flow(file, rep_file, max_steps, tol_flow, trace_path, want_json, out);
        } else if (plant_cmd->parsed()) {
            cmd_plant(file, sub_args, seed, out_path, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace qsr

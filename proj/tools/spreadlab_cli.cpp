// Batch front end: config ingestion, suite execution, witness and plot-data
// emission.
//
// Exit codes: 0 = all checks passed, 1 = a check failed (witness emitted),
// 2 = invalid input or configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spreadlab/spreadlab.hpp"

namespace {

using namespace spreadlab;

struct CliOptions {
    std::string profile_path;
    std::string profile_b_path; // second configuration for `distinct`
    std::string out_path;
    std::optional<int> samples;
    std::optional<std::uint64_t> seed;
    std::optional<bool> oriented;
};

RunConfig load_config(const std::string& path, const CliOptions& opt) {
    RunConfig rc = cfg::parse_config(cfg::load_json_file(path));
    if (opt.samples) rc.samples = *opt.samples;
    if (opt.seed) rc.seed = *opt.seed;
    if (opt.oriented) rc.spec.oriented = *opt.oriented;
    return rc;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        if (text.empty() || text.back() != '\n') std::fputc('\n', stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot open " + out_path + " for writing");
    out.write(text.data(), std::streamsize(text.size()));
}

int finish_report(const CheckReport& rep, const std::string& out_path) {
    write_output(rep.to_json_string(), out_path);
    if (!out_path.empty())
        std::printf("%s: %s\n", rep.name.c_str(), rep.pass ? "pass" : "fail");
    return rep.pass ? 0 : 1;
}

int run_profile_validate(const RunConfig& rc, const std::string& out) {
    const ProfileValidation v = validate_profile(rc.spec.profile);
    Json j = Json::object();
    j.set("name", Json::str("profile_validate"));
    j.set("status", Json::str(v.passed() ? "pass" : "fail"));
    j.set("a_strictly_decreasing", Json::boolean(v.a_strictly_decreasing));
    j.set("limits_ok", Json::boolean(v.limits_ok));
    j.set("branches_disjoint", Json::boolean(v.disjoint));
    j.set("covering", Json::boolean(v.covering));
    j.set("d_injective", Json::boolean(v.d_injective));
    j.set("d_monotone", Json::boolean(v.d_monotone));
    j.set("min_branch_gap", Json::real(v.min_branch_gap));
    j.set("worst_cover_residual", Json::real(v.worst_cover_residual));
    j.set("min_d_gap", Json::real(v.min_d_gap));
    j.set("failure", Json::str(v.failure));
    write_output(j.dump(), out);
    return v.passed() ? 0 : 1;
}

int run_spread_build(const RunConfig& rc, const std::string& out) {
    const RotationalSpread s = make_spread(rc.spec.profile, rc.spec.handedness);
    Json j = Json::object();
    j.set("name", Json::str("spread_build"));
    j.set("profile", cfg::profile_to_json(s.profile));
    j.set("handedness", Json::integer(s.handedness));
    j.set("z_plus", to_json(s.z_plus));
    j.set("v_plus", to_json(s.v_plus));
    Json lines = Json::array();
    for (const double r : log_grid(1e-1, 1e1, 9))
        for (int k = 0; k < 8; ++k)
            lines.push_back(to_json(regulus_line(s, r, 2.0 * M_PI * k / 8)));
    j.set("sample_lines", lines);
    write_output(j.dump(), out);
    return 0;
}

int run_parallelism_build(const RunConfig& rc, const std::string& out) {
    const CanonicalParallelism cp = canonicalize(rc.spec);
    Json j = Json::object();
    j.set("name", Json::str("parallelism_build"));
    j.set("canonical_profile", cfg::profile_to_json(cp.profile));
    j.set("handedness", Json::integer(cp.handedness));
    j.set("oriented", Json::boolean(cp.oriented));
    j.set("gamma", Json::str(to_string(cp.gamma)));
    j.set("z_plus", to_json(cp.base.z_plus));
    j.set("v_plus", to_json(cp.base.v_plus));
    write_output(j.dump(), out);
    return 0;
}

int run_parallelism_classify(const RunConfig& rc, const std::string& out) {
    const CanonicalParallelism cp = canonicalize(rc.spec);
    Json rows = Json::array();
    for (int i = 0; i < rc.samples; ++i) {
        Rng rng = Rng::for_index(rc.seed, std::uint64_t(i));
        const OrientedLine l = sample_parallelism_probe(rng, i % 24);
        Json row = Json::object();
        row.set("line", to_json(l));
        try {
            const ClassAssignment asg = parallel_class_of(cp, l);
            row.set("class_axis", to_json(asg.id.axis));
            row.set("residual", Json::real(asg.residual));
            row.set("orientation_mismatch", Json::boolean(asg.orientation_mismatch));
        } catch (const Error& e) {
            row.set("error", Json::str(e.what()));
        }
        rows.push_back(row);
    }
    Json j = Json::object();
    j.set("name", Json::str("parallelism_classify"));
    j.set("samples", Json::integer(rc.samples));
    j.set("seed", Json::integer(std::int64_t(rc.seed)));
    j.set("classes", rows);
    write_output(j.dump(), out);
    return 0;
}

int run_witness_acentric(const RunConfig& rc, const std::string& out) {
    CanonicalParallelism cp = canonicalize(rc.spec);
    cp.oriented = false;
    const PartitionFailureWitness w = partition_failure_witness(cp);
    Json j = Json::object();
    j.set("name", Json::str("witness_acentric"));
    j.set("line", to_json(w.line));
    j.set("class_identity", to_json(w.id_identity.axis));
    j.set("class_half_turn", to_json(w.id_half_turn.axis));
    j.set("conjugate_member", to_json(w.conjugate_member));
    j.set("probe_point", to_json(w.probe));
    j.set("base_member", to_json(w.base_member));
    j.set("separation", Json::real(w.separation));
    write_output(j.dump(), out);
    return 0;
}

int run_distinct(const RunConfig& a, const RunConfig& b, const std::string& out) {
    const auto w = distinctness_witness(canonicalize(a.spec), canonicalize(b.spec),
                                        std::max(1, a.samples / 100), a.seed);
    Json j = Json::object();
    j.set("name", Json::str("distinct"));
    j.set("found", Json::boolean(w.has_value()));
    if (w) {
        Json jw = Json::object();
        jw.set("probe", to_json(w->probe));
        jw.set("point", to_json(w->point));
        jw.set("member_a", to_json(w->member_a));
        jw.set("member_b", to_json(w->member_b));
        jw.set("separation", Json::real(w->separation));
        jw.set("clearance", Json::real(w->clearance));
        j.set("witness", jw);
    } else {
        j.set("witness", Json::null());
    }
    write_output(j.dump(), out);
    return 0;
}

int run_emit(const std::string& kind, const RunConfig& rc, const std::string& out) {
    if (kind == "curves") {
        write_output(emit_curves(rc.spec.profile), out);
    } else if (kind == "dtable") {
        write_output(emit_dtable(rc.spec.profile), out);
    } else {
        write_output(emit_classes(canonicalize(rc.spec)), out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotational spreads and parallelisms of PG(3,R)"};
    app.require_subcommand(1);

    CliOptions opt;
    int samples_flag = -1;
    long long seed_flag = -1;
    bool no_oriented = false, oriented = false;

    app.add_option("--profile", opt.profile_path, "profile or configuration JSON")
        ->type_name("FILE");
    app.add_option("--profile-b", opt.profile_b_path, "second configuration (distinct)")
        ->type_name("FILE");
    app.add_option("--out", opt.out_path, "output path (default: stdout)")->type_name("PATH");
    app.add_option("--samples", samples_flag, "sample count override");
    app.add_option("--seed", seed_flag, "seed override");
    app.add_flag("--no-oriented", no_oriented, "force a non-oriented run");
    app.add_flag("--oriented", oriented, "force an oriented run");

    auto* profile = app.add_subcommand("profile", "profile operations");
    auto* profile_validate = profile->add_subcommand("validate", "validate a profile");
    auto* spread = app.add_subcommand("spread", "spread operations");
    auto* spread_build = spread->add_subcommand("build", "emit the spread");
    auto* spread_check = spread->add_subcommand("check", "covering and disjointness");
    auto* par = app.add_subcommand("parallelism", "parallelism operations");
    auto* par_build = par->add_subcommand("build", "emit the canonical data");
    auto* par_check = par->add_subcommand("check", "partition check");
    auto* par_classify = par->add_subcommand("classify", "classify sampled lines");
    auto* clifford = app.add_subcommand("clifford", "quaternion structure");
    auto* clifford_compare_cmd = clifford->add_subcommand("compare", "class vs label test");
    auto* witness = app.add_subcommand("witness", "counterexample emission");
    auto* witness_acentric = witness->add_subcommand("acentric", "partition failure witness");
    auto* distinct = app.add_subcommand("distinct", "set distinctness of two parallelisms");
    auto* emit = app.add_subcommand("emit", "plot data");
    auto* emit_curves_cmd = emit->add_subcommand("curves", "hyperbola traces CSV");
    auto* emit_dtable_cmd = emit->add_subcommand("dtable", "axis distance CSV");
    auto* emit_classes_cmd = emit->add_subcommand("classes", "class member CSV");

    for (auto* g : {profile, spread, par, clifford, witness, emit}) {
        g->require_subcommand(1);
        g->fallthrough();
    }
    for (auto* leaf :
         {profile_validate, spread_build, spread_check, par_build, par_check, par_classify,
          clifford_compare_cmd, witness_acentric, distinct, emit_curves_cmd, emit_dtable_cmd,
          emit_classes_cmd})
        leaf->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return 2;
    }

    if (samples_flag > 0) opt.samples = samples_flag;
    if (seed_flag >= 0) opt.seed = std::uint64_t(seed_flag);
    if (no_oriented) opt.oriented = false;
    else if (oriented) opt.oriented = true;

    try {
        if (opt.profile_path.empty()) throw ConfigError("--profile FILE is required");
        const RunConfig rc = load_config(opt.profile_path, opt);
        const std::string out = opt.out_path.empty() ? rc.out : opt.out_path;

        if (profile_validate->parsed()) return run_profile_validate(rc, out);
        if (spread_build->parsed()) return run_spread_build(rc, out);
        if (spread_check->parsed()) {
            const RotationalSpread s = make_spread(rc.spec.profile, rc.spec.handedness);
            return finish_report(check_spread(s, rc.samples, rc.samples, rc.seed,
                                              rc.tol_covering, rc.tol_pairing),
                                 out);
        }
        if (par_build->parsed()) return run_parallelism_build(rc, out);
        if (par_check->parsed())
            return finish_report(check_parallelism(canonicalize(rc.spec), rc.samples, rc.seed),
                                 out);
        if (par_classify->parsed()) return run_parallelism_classify(rc, out);
        if (clifford_compare_cmd->parsed())
            return finish_report(check_clifford(canonicalize(rc.spec), rc.samples, rc.seed),
                                 out);
        if (witness_acentric->parsed()) return run_witness_acentric(rc, out);
        if (distinct->parsed()) {
            if (opt.profile_b_path.empty())
                throw ConfigError("distinct requires --profile-b FILE");
            return run_distinct(rc, load_config(opt.profile_b_path, opt), out);
        }
        if (emit_curves_cmd->parsed()) return run_emit("curves", rc, out);
        if (emit_dtable_cmd->parsed()) return run_emit("dtable", rc, out);
        if (emit_classes_cmd->parsed()) return run_emit("classes", rc, out);

        throw ConfigError("no subcommand selected");
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#pragma once

// Subcommands of heisen_cli. Kept in a header so the unit tests can drive
// run_cli() with in-memory streams.

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heisen/heisen.hpp"

namespace heisen::cli {

enum ExitCode { kPass = 0, kFail = 1, kInputError = 2 };

struct RunConfig {
    std::string command;
    std::string kind;  // verify only
    std::string set_path;
    std::string e_path;
    std::string field_path;
    double alpha = 1;
    double beta = 1;
    std::string resolution = "1/64";
    int k_max = 16, l_max = 16, m_max = 16;
    int j_min = -2, j_max = 2;
    std::uint64_t seed = 1;
    std::size_t bank_size = 16;
    double tol = 0.05;
    double bound_a = 1, bound_b = 1;
    std::string out_path;
    std::string csv_path;
    std::string sweep_path;

    void validate() const {
        if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "--tol must be positive");
        if (k_max < 1 || l_max < 1 || m_max < 1) throw Error(ErrorKind::InvalidArgument, "truncations must be >= 1");
        if (!(alpha > 0) || !(beta > 0)) throw Error(ErrorKind::InvalidArgument, "--alpha and --beta must be positive");
        if (bank_size < 1) throw Error(ErrorKind::InvalidArgument, "--bank-size must be >= 1");
        if (j_min > j_max) throw Error(ErrorKind::InvalidArgument, "--jmin must not exceed --jmax");
    }

    Truncation truncation() const { return {k_max, l_max, m_max, {}, {}}; }

    /// Everything that influences the result, in a fixed key order.
    nlohmann::json canonical() const {
        nlohmann::json j{{"command", command}, {"alpha", alpha},         {"beta", beta},
                         {"kmax", k_max},      {"lmax", l_max},          {"mmax", m_max},
                         {"jmin", j_min},      {"jmax", j_max},          {"seed", seed},
                         {"bank_size", bank_size}, {"tol", tol},         {"resolution", resolution},
                         {"A", bound_a},       {"B", bound_b}};
        if (!kind.empty()) j["kind"] = kind;
        const std::vector<std::pair<std::string, std::string>> inputs{
            {"set", set_path}, {"e", e_path}, {"field", field_path}};
        for (const auto& [key, path] : inputs)
            if (!path.empty()) j[key] = read_text_file(path);
        return j;
    }

    std::string hash() const { return config_hash(canonical().dump()); }
};

namespace detail {

inline void emit(const RunConfig& cfg, nlohmann::json report, std::ostream& out) {
    report["config_hash"] = cfg.hash();
    const std::string text = report.dump(2);
    if (cfg.out_path.empty()) {
        out << text << '\n';
        return;
    }
    std::ofstream f(cfg.out_path);
    if (!f) throw Error(ErrorKind::IoError, "cannot write '" + cfg.out_path + "'");
    f << text << '\n';
}

inline std::ofstream open_csv(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
    f.precision(17);
    return f;
}

inline void write_ratio_csv(const FrameReport& rep, const std::string& path) {
    auto f = open_csv(path);
    f << "test_id,norm2,frame_sum,ratio\n";
    for (const auto& t : rep.tests) f << t.id << ',' << t.norm2 << ',' << t.frame_sum << ',' << t.ratio << '\n';
}

inline Rational resolution(const RunConfig& cfg) {
    const Rational r = parse_rational(cfg.resolution);
    if (!(r > 0)) throw Error(ErrorKind::InvalidArgument, "--resolution must be positive");
    return r;
}

}  // namespace detail

inline int cmd_set_check(const RunConfig& cfg, std::ostream& out) {
    const auto s = load_set_spec(cfg.set_path);
    const auto tr = is_translation_congruent_unit(s);
    const auto dl = is_dilation_congruent_shannon(s);
    const bool in_band = is_subset(s, IntervalUnion::single(-1, 1));
    const bool ok = tr.congruent && dl.congruent && in_band;
    detail::emit(cfg,
                 {{"set", to_json(s)["intervals"]},
                  {"inside_unit_interval", in_band},
                  {"translation", to_json(tr, "shift")},
                  {"dilation", to_json(dl, "j")},
                  {"wavelet_set", ok}},
                 out);
    return ok ? kPass : kFail;
}

inline int cmd_build_indicator(const RunConfig& cfg, std::ostream& out) {
    if (cfg.out_path.empty()) throw Error(ErrorKind::InvalidArgument, "--out is required");
    const auto s = load_set_spec(cfg.set_path);
    const Field g = indicator_gabor_field(s, cfg.alpha, cfg.beta, detail::resolution(cfg));
    save_field(g, cfg.out_path);
    out << nlohmann::json{{"field", cfg.out_path},
                          {"cells", g.cells().size()},
                          {"norm2", norm2(g)},
                          {"config_hash", cfg.hash()}}
               .dump(2)
        << '\n';
    return kPass;
}

namespace detail {

inline FrameReport run_verify(const RunConfig& cfg, const Field& g, const IntervalUnion& s, const Truncation& box) {
    if (cfg.kind == "gabor") {
        const auto bank = make_line_bank({}, cfg.seed, cfg.bank_size);
        return check_gabor_field(g, s, cfg.alpha, cfg.beta, bank, box, cfg.tol);
    }
    BankSpec spec;
    spec.support = s;
    if (cfg.kind == "translation")
        return verify_parseval_translation(g, s, cfg.alpha, cfg.beta, make_test_bank(spec, cfg.seed, cfg.bank_size),
                                           box, cfg.tol);
    WaveletSystemSpec ws;
    ws.alpha = cfg.alpha;
    ws.beta = cfg.beta;
    ws.j_min = cfg.j_min;
    ws.j_max = cfg.j_max;
    ws.box = box;
    const auto shells = static_cast<std::size_t>(cfg.j_max - cfg.j_min + 1);
    const std::size_t per_shell = std::max<std::size_t>(1, cfg.bank_size / shells);
    return verify_parseval_wavelet(g, s, ws, make_shell_bank(spec, cfg.j_min, cfg.j_max, cfg.seed, per_shell, 1),
                                   cfg.tol);
}

}  // namespace detail

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const Field g = load_field(cfg.field_path);
    const IntervalUnion s = cfg.set_path.empty() ? g.support() : load_set_spec(cfg.set_path);
    const FrameReport rep = detail::run_verify(cfg, g, s, cfg.truncation());
    if (!cfg.csv_path.empty()) detail::write_ratio_csv(rep, cfg.csv_path);
    if (!cfg.sweep_path.empty()) {
        // box sizes 1, 2, 4, ... up to the requested one
        auto f = detail::open_csv(cfg.sweep_path);
        f << "box,min_ratio,max_ratio,mean_ratio\n";
        const int top = std::max({cfg.k_max, cfg.l_max, cfg.m_max});
        for (int n = 1;; n = std::min(2 * n, top)) {
            const auto r = detail::run_verify(cfg, g, s, {n, n, n, {}, {}});
            f << n << ',' << r.min_ratio << ',' << r.max_ratio << ',' << r.mean_ratio << '\n';
            if (n == top) break;
        }
    }
    detail::emit(cfg, to_json(rep), out);
    return rep.pass ? kPass : kFail;
}

inline int cmd_admissibility(const RunConfig& cfg, std::ostream& out) {
    const Field g = load_field(cfg.field_path);
    const auto rep = check_necessary_condition(g, cfg.bound_a, cfg.bound_b, cfg.alpha, cfg.beta, cfg.tol);
    detail::emit(cfg, to_json(rep), out);
    return rep.pass() ? kPass : kFail;
}

inline int cmd_counterexample(const RunConfig& cfg, std::ostream& out) {
    const auto s = load_set_spec(cfg.set_path);
    const auto e = load_set_spec(cfg.e_path);
    const Rational res = detail::resolution(cfg);
    const Field eta = build_counterexample_eta(s, e, res);
    const Field g = counterexample_window(s, res);
    const bool keep = !cfg.csv_path.empty();
    const auto scan = orthogonality_scan(eta, g, cfg.truncation(), cfg.alpha, cfg.beta, keep);
    if (keep) {
        auto f = detail::open_csv(cfg.csv_path);
        f << "k,l,m,abs_inner\n";
        for (const auto& en : scan.entries)
            f << en.index.k << ',' << en.index.l << ',' << en.index.m << ',' << en.abs_inner << '\n';
    }
    const double n2 = norm2(eta);
    const bool shown = n2 > 0 && scan.max_abs <= cfg.tol;
    detail::emit(cfg,
                 {{"eta_norm2", n2},
                  {"max_abs_inner", scan.max_abs},
                  {"argmax", {{"k", scan.argmax.k}, {"l", scan.argmax.l}, {"m", scan.argmax.m}}},
                  {"truncation", to_json(cfg.truncation())},
                  {"tol", cfg.tol},
                  {"verdict", shown ? "not a frame" : "inconclusive"}},
                 out);
    return shown ? kPass : kFail;
}

inline int cmd_export_csv(const RunConfig& cfg, std::ostream& out) {
    const Field f = load_field(cfg.field_path);
    if (cfg.out_path.empty()) {
        write_abs2_csv(f, out);
    } else {
        auto file = detail::open_csv(cfg.out_path);
        write_abs2_csv(f, file);
    }
    return kPass;
}

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heisenberg wavelet sets, Gabor fields and frame checks"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_lattice = [&](CLI::App* c) {
        c->add_option("--alpha", cfg.alpha, "translation lattice step")->capture_default_str();
        c->add_option("--beta", cfg.beta, "modulation lattice step")->capture_default_str();
    };
    const auto add_box = [&](CLI::App* c) {
        c->add_option("--kmax", cfg.k_max)->capture_default_str();
        c->add_option("--lmax", cfg.l_max)->capture_default_str();
        c->add_option("--mmax", cfg.m_max)->capture_default_str();
    };

    auto* set_check = app.add_subcommand("set-check", "decide whether a set is a Heisenberg wavelet set");
    set_check->add_option("--set", cfg.set_path, "set-spec JSON")->required();
    set_check->add_option("--out", cfg.out_path, "report path (default stdout)");

    auto* build = app.add_subcommand("build-indicator", "write the indicator Gabor field of a set");
    build->add_option("--set", cfg.set_path)->required();
    add_lattice(build);
    build->add_option("--resolution", cfg.resolution, "lambda cell width, rational")->capture_default_str();
    build->add_option("--out", cfg.out_path, "field file")->required();

    auto* verify = app.add_subcommand("verify", "sampled Parseval check");
    verify->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"gabor", "translation", "wavelet"}));
    verify->add_option("--field", cfg.field_path)->required();
    verify->add_option("--set", cfg.set_path, "set-spec JSON (default: the field support)");
    add_lattice(verify);
    add_box(verify);
    verify->add_option("--jmin", cfg.j_min)->capture_default_str();
    verify->add_option("--jmax", cfg.j_max)->capture_default_str();
    verify->add_option("--seed", cfg.seed)->capture_default_str();
    verify->add_option("--bank-size", cfg.bank_size)->capture_default_str();
    verify->add_option("--tol", cfg.tol)->capture_default_str();
    verify->add_option("--out", cfg.out_path);
    verify->add_option("--csv", cfg.csv_path, "per-test ratios");
    verify->add_option("--sweep", cfg.sweep_path, "ratio statistics against box size");

    auto* adm = app.add_subcommand("admissibility", "Calderon integrals against A, B");
    adm->add_option("--field", cfg.field_path)->required();
    adm->add_option("-A,--lower", cfg.bound_a)->capture_default_str();
    adm->add_option("-B,--upper", cfg.bound_b)->capture_default_str();
    add_lattice(adm);
    adm->add_option("--tol", cfg.tol)->capture_default_str();
    adm->add_option("--out", cfg.out_path);

    auto* cex = app.add_subcommand("counterexample", "orthogonality scan for a set that fails translation congruence");
    cex->add_option("--set", cfg.set_path)->required();
    cex->add_option("--e", cfg.e_path, "set-spec JSON for E")->required();
    cex->add_option("--resolution", cfg.resolution)->capture_default_str();
    add_lattice(cex);
    add_box(cex);
    cex->add_option("--tol", cfg.tol)->capture_default_str();
    cex->add_option("--out", cfg.out_path);
    cex->add_option("--csv", cfg.csv_path, "|<eta, g_klm>| over the box");

    auto* exp = app.add_subcommand("export-csv", "|f|^2 per field cell, for plotting");
    exp->add_option("--field", cfg.field_path)->required();
    exp->add_option("--out", cfg.out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kInputError;
    }

    try {
        if (adm->parsed()) {
            // admissibility compares integrals, so the default tolerance is tight
            if (adm->count("--tol") == 0) cfg.tol = 1e-12;
        }
        if (cex->parsed()) {
            if (cex->count("--tol") == 0) cfg.tol = 1e-6;
            if (cex->count("--resolution") == 0) cfg.resolution = "1/1024";
        }
        cfg.validate();
        cfg.command = app.get_subcommands().front()->get_name();
        if (set_check->parsed()) return cmd_set_check(cfg, out);
        if (build->parsed()) return cmd_build_indicator(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out);
        if (adm->parsed()) return cmd_admissibility(cfg, out);
        if (cex->parsed()) return cmd_counterexample(cfg, out);
        if (exp->parsed()) return cmd_export_csv(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace heisen::cli

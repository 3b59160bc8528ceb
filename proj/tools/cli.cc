// Copyright 2026 The tcgsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "golden.h"
#include "tcg/circuit.h"
#include "tcg/composer.h"
#include "tcg/noise.h"
#include "tcg/tomography.h"

namespace tcg::tools {
namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

struct RunConfig {
    std::uint64_t seed = 20260;
    std::uint64_t shots = 0;
    bool noise = false;
    std::string device_config;
    double kappa = std::numbers::sqrt2;
    double leak_rate = 0;
    std::string out_dir = "tcg_out";
    std::string scheme;
    bool expand = false;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::vector<std::string> split(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<std::string> schemes_or(const RunConfig &cfg, std::vector<std::string> fallback) {
    if (cfg.scheme.empty() || cfg.scheme == "all") {
        return fallback;
    }
    return split(cfg.scheme);
}

double mean(const std::vector<double> &v) {
    double s = 0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? 0 : s / static_cast<double>(v.size());
}

/// Sample standard deviation; 0 for fewer than two values.
double sd(const std::vector<double> &v) {
    if (v.size() < 2) {
        return 0;
    }
    const double m = mean(v);
    double s = 0;
    for (double x : v) {
        s += (x - m) * (x - m);
    }
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

json matrix_json(const Mat &m) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json rr = json::array(), ri = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            rr.push_back(m(r, c).real());
            ri.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    return json{{"re", re}, {"im", im}};
}

json real_matrix_json(const Eigen::MatrixXd &m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back(m(r, c));
        }
        out.push_back(row);
    }
    return out;
}

class Context {
  public:
    Context(const RunConfig &cfg, std::ostream &out) : cfg_(cfg), out_(out) {
        if (cfg.noise) {
            DeviceConfig dev = DeviceConfig::reference();
            if (!cfg.device_config.empty()) {
                std::ifstream in(cfg.device_config);
                if (!in) {
                    throw std::runtime_error("cannot read device config " + cfg.device_config);
                }
                std::stringstream ss;
                ss << in.rdbuf();
                dev = DeviceConfig::from_json(ss.str());
            }
            model_ = NoiseModel::from_device(dev, cfg.kappa, cfg.leak_rate);
            model_.validate();
        }
    }

    const RunConfig &cfg() const { return cfg_; }
    std::ostream &out() { return out_; }
    const NoiseModel *noise() const { return cfg_.noise ? &model_ : nullptr; }

    Circuit prepare(Circuit c) const { return cfg_.expand ? expand_composites(c) : c; }

    void write(const std::string &name, const std::string &content) const {
        std::filesystem::create_directories(cfg_.out_dir);
        const std::filesystem::path p = std::filesystem::path(cfg_.out_dir) / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + p.string());
        }
        f << content;
    }
    void write(const std::string &name, const json &j) const { write(name, j.dump(2) + "\n"); }

    json config_json() const {
        return json{{"seed", cfg_.seed},         {"shots", cfg_.shots},   {"noise", cfg_.noise},
                    {"device_config", cfg_.device_config}, {"kappa", cfg_.kappa}, {"leak_rate", cfg_.leak_rate},
                    {"expand_composites", cfg_.expand}};
    }

  private:
    RunConfig cfg_;
    std::ostream &out_;
    NoiseModel model_;
};

// ---------------------------------------------------------------- verify

int cmd_verify(Context &ctx, bool flip, bool strict) {
    const Convention conv = flip ? Convention::kUnitary : Convention::kBare;
    const auto results = run_golden_suite(conv);
    json entries = json::array();
    bool ok = true;
    ctx.out() << "tolerance " << num(kGoldenTol) << ", convention " << (flip ? "unitary (flipped)" : "bare") << "\n";
    for (const GoldenResult &r : results) {
        const bool pass = r.pass(kGoldenTol);
        const char *status = pass ? "ok" : r.known_mismatch ? "MISMATCH (documented)" : "FAIL";
        if (!pass && (!r.known_mismatch || strict)) {
            ok = false;
        }
        char line[160];
        std::snprintf(line, sizeof line, "%-26s %-13s %5d cases  max residual %.3e  %s\n", r.name.c_str(),
                      to_string(r.comparison), r.cases, r.max_residual, status);
        ctx.out() << line;
        entries.push_back(json{{"name", r.name},
                               {"description", r.description},
                               {"comparison", to_string(r.comparison)},
                               {"cases", r.cases},
                               {"max_residual", r.max_residual},
                               {"pass", pass},
                               {"known_mismatch", r.known_mismatch}});
    }
    ctx.write("verify.json", json{{"tolerance", kGoldenTol},
                                  {"convention", flip ? "unitary" : "bare"},
                                  {"entries", entries},
                                  {"ok", ok}});
    if (!ok) {
        ctx.out() << "verify: failed\n";
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- depth-table

int cmd_depth_table(Context &ctx, int m_max) {
    if (m_max < 3) {
        throw std::invalid_argument("--m-max must be at least 3");
    }
    const auto schemes = schemes_or(ctx.cfg(), {"CZ", "CU"});
    std::string csv = "family,scheme,m,n1q,n2q,depth\n";
    auto row = [&](const std::string &fam, const std::string &sch, int m, const Counts &c) {
        csv += fam + "," + sch + "," + std::to_string(m) + "," + std::to_string(c.n1q) + "," + std::to_string(c.n2q) +
               "," + std::to_string(c.depth) + "\n";
    };
    const bool ex = ctx.cfg().expand;
    for (const char *fam : {"GHZ", "W"}) {
        for (const auto &s : schemes) {
            for (int m = 3; m <= m_max; m++) {
                const Circuit c = std::string(fam) == "GHZ" ? ghz_circuit(m, 0, s) : w_circuit(m, 1, s);
                row(fam, s, m, depth_and_counts(c, ex));
            }
        }
    }
    const Counts cliff = depth_and_counts(clifford_comparator_circuit(), ex);
    const Counts tcg = depth_and_counts(comparator_circuit(), ex);
    row("comparator", "Clifford", 4, cliff);
    row("comparator", "TCG", 4, tcg);
    ctx.write("depth_table.csv", csv);
    ctx.out() << csv;
    auto ratio = [&](const std::string &fam, int m) {
        const Counts a = depth_and_counts(fam == "GHZ" ? ghz_circuit(m, 0, "CU") : w_circuit(m, 1, "CU"), ex);
        const Counts b = depth_and_counts(fam == "GHZ" ? ghz_circuit(m, 0, "CZ") : w_circuit(m, 1, "CZ"), ex);
        return static_cast<double>(a.depth) / b.depth;
    };
    ctx.out() << "depth ratio CU/CZ at m=" << m_max << ": GHZ " << num(ratio("GHZ", m_max)) << ", W "
              << num(ratio("W", m_max)) << "\n";
    ctx.out() << "comparator depth reduction: " << num(1.0 - static_cast<double>(tcg.depth) / cliff.depth) << "\n";
    return 0;
}

// ---------------------------------------------------------------- prepare

int cmd_prepare(Context &ctx, const std::string &kind, int m, double param, bool has_param, int points, int reps) {
    if (kind != "ghz" && kind != "w") {
        throw std::invalid_argument("--kind must be ghz or w");
    }
    if (m < 2) {
        throw std::invalid_argument("--m must be at least 2");
    }
    if (kind == "w" && m == 3 && (param < 0 || param * param > 2 + 1e-12)) {
        throw std::invalid_argument("W lambda must lie in [0, sqrt(2)]");
    }
    std::vector<double> grid;
    if (has_param) {
        grid = {param};
    } else {
        if (points < 1) {
            throw std::invalid_argument("--points must be positive");
        }
        for (int k = 0; k < points; k++) {
            grid.push_back(kind == "ghz" ? k * 2 * kPi / points
                                         : (points == 1 ? 1.0 : k * std::numbers::sqrt2 / (points - 1)));
        }
    }
    const bool sampled = ctx.cfg().shots > 0;
    const int n_reps = sampled ? reps : 1;
    const bool tomography = m <= 4;
    const auto schemes = schemes_or(ctx.cfg(), {"CZ", "CU", "SPCU"});

    std::string csv = "kind,scheme,m,param,method,reps,mean,sd\n";
    json rows = json::array();
    std::uint64_t stream = 0;
    for (const auto &s : schemes) {
        for (double x : grid) {
            const Circuit c = ctx.prepare(kind == "ghz" ? ghz_circuit(m, x, s) : w_circuit(m, x, s));
            const StateVector target = kind == "ghz" ? ghz_state(m, x) : w_state(m, x);
            std::vector<double> fs;
            for (int r = 0; r < n_reps; r++) {
                const std::uint64_t seed = stream_seed(ctx.cfg().seed, stream++);
                if (tomography) {
                    const DensityMatrix est = qst(c, QstOptions{ctx.cfg().shots, seed}, ctx.noise());
                    fs.push_back(state_fidelity(est, restrict_computational(target)));
                } else {
                    const StateVector zero = StateVector::basis(c.space(), std::vector<int>(m, 0));
                    const DensityMatrix rho = simulate(c, DensityMatrix::pure(zero), ctx.noise());
                    fs.push_back(state_fidelity(rho, target));
                }
            }
            const char *method = tomography ? "qst" : "direct";
            csv += kind + "," + s + "," + std::to_string(m) + "," + num(x) + "," + method + "," +
                   std::to_string(n_reps) + "," + num(mean(fs)) + "," + num(sd(fs)) + "\n";
            rows.push_back(json{{"scheme", s}, {"param", x}, {"method", method}, {"fidelities", fs},
                                {"mean", mean(fs)}, {"sd", sd(fs)}});
        }
    }
    ctx.write("prepare.csv", csv);
    ctx.write("prepare.json", json{{"kind", kind}, {"m", m}, {"config", ctx.config_json()}, {"rows", rows}});
    ctx.out() << csv;
    return 0;
}

// ---------------------------------------------------------------- comparator

int cmd_comparator(Context &ctx, int reps) {
    const std::string scheme = ctx.cfg().scheme.empty() ? "TCG" : ctx.cfg().scheme;
    if (scheme != "TCG" && scheme != "Clifford") {
        throw std::invalid_argument("comparator --scheme must be TCG or Clifford");
    }
    const Circuit raw = scheme == "TCG" ? comparator_circuit() : clifford_comparator_circuit();
    const Circuit c = ctx.prepare(raw);
    const Eigen::MatrixXd m0 = truth_table(c).matrix;

    // Contract checks on the noiseless table and the circuit itself.
    bool table_ok = true;
    for (int in = 0; in < 16; in++) {
        std::vector<int> bits = {in >> 3 & 1, in >> 2 & 1, in >> 1 & 1, in & 1};
        const std::vector<int> o = comparator_reference(bits);
        const int out = o[0] << 3 | o[1] << 2 | o[2] << 1 | o[3];
        table_ok = table_ok && std::abs(m0(out, in) - 1) < 1e-9;
    }
    const Mat restricted = restrict_computational(circuit_unitary(c)).matrix();
    const bool unitary = is_unitary(restricted);

    const bool sampled = ctx.cfg().shots > 0;
    const int n_reps = sampled || ctx.noise() ? std::max(1, sampled ? reps : 1) : 1;
    std::vector<double> fs;
    Eigen::MatrixXd first;
    for (int r = 0; r < n_reps; r++) {
        std::optional<int> shots;
        if (sampled) {
            shots = static_cast<int>(ctx.cfg().shots);
        }
        const Eigen::MatrixXd me = truth_table(c, shots, stream_seed(ctx.cfg().seed, r), ctx.noise()).matrix;
        if (r == 0) {
            first = me;
        }
        fs.push_back(truth_table_fidelity(me, m0));
    }
    const Counts counts = depth_and_counts(raw, ctx.cfg().expand);
    ctx.write("comparator.json", json{{"scheme", scheme},
                                      {"config", ctx.config_json()},
                                      {"counts", {{"n1q", counts.n1q}, {"n2q", counts.n2q}, {"depth", counts.depth}}},
                                      {"unitary", unitary},
                                      {"truth_table_ok", table_ok},
                                      {"fidelities", fs},
                                      {"fidelity", mean(fs)},
                                      {"fidelity_sd", sd(fs)},
                                      {"M0", real_matrix_json(m0)},
                                      {"Me", real_matrix_json(first)}});
    ctx.out() << "scheme " << scheme << ": n1q " << counts.n1q << ", n2q " << counts.n2q << ", depth " << counts.depth
              << "\nunitary " << (unitary ? "yes" : "no") << ", truth table " << (table_ok ? "ok" : "FAIL")
              << "\nfidelity " << num(mean(fs)) << " sd " << num(sd(fs)) << " over " << n_reps << " run(s)\n";
    return unitary && table_ok ? 0 : 1;
}

// ---------------------------------------------------------------- qpt

int cmd_qpt(Context &ctx, double theta, double phi, int reps) {
    Circuit c = Circuit::chain(2, "CU");
    c.add("cu", {0, 1}, {{"theta", theta}, {"phi", phi}});
    c = ctx.prepare(c);
    const ChiMatrix ideal = chi_of_unitary(cu(theta, phi).restricted.matrix());
    const int n_reps = ctx.cfg().shots > 0 ? reps : 1;
    std::vector<double> fs, raw;
    ChiMatrix first;
    for (int r = 0; r < n_reps; r++) {
        const ChiMatrix chi =
            qpt(c, QptOptions{ctx.cfg().shots, stream_seed(ctx.cfg().seed, static_cast<std::uint64_t>(r)), ctx.noise()});
        if (r == 0) {
            first = chi;
        }
        raw.push_back(process_fidelity(chi, ideal));
        fs.push_back(process_fidelity(project_cp(chi), ideal));
    }
    ctx.write("qpt.json", json{{"theta", theta},
                               {"phi", phi},
                               {"config", ctx.config_json()},
                               {"fidelities", fs},
                               {"fidelity", mean(fs)},
                               {"fidelity_sd", sd(fs)},
                               {"fidelity_unprojected", mean(raw)},
                               {"chi", matrix_json(first.chi)},
                               {"chi_ideal", matrix_json(ideal.chi)}});
    ctx.out() << "CU(" << num(theta) << ", " << num(phi) << ") process fidelity " << num(mean(fs)) << " sd "
              << num(sd(fs)) << " over " << n_reps << " run(s)\n";
    return 0;
}

// ---------------------------------------------------------------- feedback

int cmd_feedback(Context &ctx, double theta, double phi, double dtheta, double dphi, int max_iter, bool local_z) {
    FeedbackOptions opt;
    opt.max_iter = max_iter;
    opt.shots = ctx.cfg().shots;
    opt.seed = ctx.cfg().seed;
    opt.noise = ctx.noise();
    opt.fit_local_z = local_z;
    const FeedbackState st = feedback_calibrate(theta, phi, dtheta, dphi, opt);
    std::string csv = "iteration,fidelity\n";
    for (std::size_t i = 0; i < st.fidelity_history.size(); i++) {
        csv += std::to_string(i + 1) + "," + num(st.fidelity_history[i]) + "\n";
    }
    ctx.write("feedback.csv", csv);
    ctx.write("feedback.json", json{{"theta", theta},
                                    {"phi", phi},
                                    {"dtheta", dtheta},
                                    {"dphi", dphi},
                                    {"config", ctx.config_json()},
                                    {"iterations", st.iterations},
                                    {"converged", st.converged},
                                    {"fidelity_history", st.fidelity_history},
                                    {"theta_applied", st.theta_applied},
                                    {"phi_applied", st.phi_applied},
                                    {"theta_hat", st.theta_hat},
                                    {"phi_hat", st.phi_hat},
                                    {"calibrated_fidelity", st.calibrated_fidelity}});
    ctx.out() << csv << "converged " << (st.converged ? "yes" : "no") << " after " << st.iterations
              << " iteration(s); calibrated fidelity " << num(st.calibrated_fidelity) << "\n";
    return 0;
}

// ---------------------------------------------------------------- scan

int cmd_scan(Context &ctx, const std::string &kind, int points, double phi0, double phi_cu) {
    if (points < 2) {
        throw std::invalid_argument("--points must be at least 2");
    }
    std::vector<double> xs;
    const double span = kind == "rotation" ? 2 * kPi : kPi;
    for (int k = 0; k < points; k++) {
        xs.push_back(k * span / (points - 1));
    }
    std::vector<ScanRow> rows;
    std::function<double(double)> expected;
    if (kind == "rotation") {
        rows = rotation_scan(xs, phi_cu);
        expected = [](double t) { return std::pow(std::sin(t / 2), 2); };
    } else if (kind == "phase") {
        rows = phase_scan(xs, phi0);
        expected = [phi0](double p) { return std::pow(std::cos(p + phi0), 2); };
    } else if (kind == "echo") {
        rows = echo_phase_scan(xs, phi0);
        expected = [phi0](double p) { return std::pow(std::cos(2 * (p + phi0)), 2); };
    } else {
        throw std::invalid_argument("--kind must be rotation, phase or echo");
    }
    std::string csv = "x,P00,P01,P10,P11,expected_P10,residual\n";
    double worst = 0;
    for (const ScanRow &r : rows) {
        const double e = expected(r.x);
        const double res = std::abs(r.populations[2] - e);
        worst = std::max(worst, res);
        csv += num(r.x);
        for (double p : r.populations) {
            csv += "," + num(p);
        }
        csv += "," + num(e) + "," + num(res) + "\n";
    }
    ctx.write("scan_" + kind + ".csv", csv);
    ctx.out() << csv << "max residual " << num(worst) << "\n";
    return worst <= 1e-9 ? 0 : 1;
}

// ---------------------------------------------------------------- decohere

int cmd_decohere(Context &ctx, const std::vector<double> &t1_grid, const std::vector<double> &tphi_grid) {
    auto rows = decoherence_comparison(t1_grid, tphi_grid, ctx.cfg().kappa);
    DeviceConfig dev = DeviceConfig::reference();
    if (!ctx.cfg().device_config.empty()) {
        std::ifstream in(ctx.cfg().device_config);
        std::stringstream ss;
        ss << in.rdbuf();
        dev = DeviceConfig::from_json(ss.str());
    }
    for (DecoherenceRow r : decoherence_at_device(dev, ctx.cfg().kappa)) {
        r.sweep = "device-" + r.sweep;
        rows.push_back(r);
    }
    std::string csv = "sweep,value_us,cz,cu,cnot,ordered\n";
    for (const auto &r : rows) {
        const bool ordered = r.cz >= r.cu && r.cu >= r.cnot;
        csv += r.sweep + "," + num(r.value_us) + "," + num(r.cz) + "," + num(r.cu) + "," + num(r.cnot) + "," +
               (ordered ? "yes" : "no") + "\n";
    }
    ctx.write("decohere.csv", csv);
    ctx.out() << csv;
    return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Transition composite gate simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML/INI file with run settings (flags take precedence)");

    RunConfig cfg;
    app.option_defaults()->always_capture_default();
    app.add_option("--seed", cfg.seed, "Root seed for all sampling")->envname("TCG_SEED");
    app.add_option("--shots", cfg.shots, "Shots per measurement setting (0 = exact)")->envname("TCG_SHOTS");
    app.add_flag("--noise", cfg.noise, "Enable the device noise model")->envname("TCG_NOISE");
    app.add_option("--device-config", cfg.device_config, "Device parameters as JSON (default: built-in)")
        ->envname("TCG_DEVICE_CONFIG");
    app.add_option("--kappa", cfg.kappa, "T1 ratio between neighbouring levels")->envname("TCG_KAPPA");
    app.add_option("--leak-rate", cfg.leak_rate, "Peak leakage per X12 pulse")->envname("TCG_LEAK_RATE");
    app.add_option("--out", cfg.out_dir, "Output directory")->envname("TCG_OUT");
    app.add_option("--scheme", cfg.scheme, "Scheme selector (comma list)")->envname("TCG_SCHEME");
    app.add_flag("--expand-composites", cfg.expand, "Run composites as primitive pulses")
        ->envname("TCG_EXPAND_COMPOSITES");
    app.fallthrough();

    std::function<int(Context &)> action;

    auto *verify = app.add_subcommand("verify", "Compare composed gates with their closed forms");
    bool flip = false, strict = false;
    verify->add_flag("--flip-convention", flip, "Build gates with the unitary X convention (negative control)");
    verify->add_flag("--strict", strict, "Also fail on documented mismatches");
    verify->callback([&] { action = [&](Context &c) { return cmd_verify(c, flip, strict); }; });

    auto *depth = app.add_subcommand("depth-table", "Gate counts and depth of the library circuits");
    int m_max = 10;
    depth->add_option("--m-max", m_max, "Largest register size");
    depth->callback([&] { action = [&](Context &c) { return cmd_depth_table(c, m_max); }; });

    auto *prep = app.add_subcommand("prepare", "GHZ/W preparation with state tomography");
    std::string kind = "ghz";
    int m = 3, points = 9, reps = 20;
    double param = 0;
    prep->add_option("--kind", kind, "ghz or w")->check(CLI::IsMember({"ghz", "w"}));
    prep->add_option("--m", m, "Number of qubits");
    auto *param_opt = prep->add_option("--param", param, "tau (GHZ) or lambda (W); omit to sweep");
    prep->add_option("--points", points, "Sweep points");
    prep->add_option("--reps", reps, "Tomography repetitions per point when sampling");
    prep->callback([&] {
        action = [&](Context &c) { return cmd_prepare(c, kind, m, param, param_opt->count() > 0, points, reps); };
    });

    auto *comp = app.add_subcommand("comparator", "Four-qubit comparator truth table");
    int comp_reps = 10;
    comp->add_option("--reps", comp_reps, "Seed-ensemble size when sampling");
    comp->callback([&] { action = [&](Context &c) { return cmd_comparator(c, comp_reps); }; });

    auto *qpt_cmd = app.add_subcommand("qpt", "Process tomography of CU(theta, phi)");
    double theta = kPi, phi = kPi;
    int qpt_reps = 10;
    qpt_cmd->add_option("--theta", theta);
    qpt_cmd->add_option("--phi", phi);
    qpt_cmd->add_option("--reps", qpt_reps, "Repetitions when sampling");
    qpt_cmd->callback([&] { action = [&](Context &c) { return cmd_qpt(c, theta, phi, qpt_reps); }; });

    auto *fb = app.add_subcommand("feedback", "Closed-loop calibration of CU");
    double fb_theta = kPi, fb_phi = kPi, dtheta = 0.1, dphi = 0;
    int max_iter = 5;
    bool local_z = false;
    fb->add_option("--theta", fb_theta);
    fb->add_option("--phi", fb_phi);
    fb->add_option("--dtheta", dtheta, "Injected rotation-angle error");
    fb->add_option("--dphi", dphi, "Injected phase error");
    fb->add_option("--max-iter", max_iter);
    fb->add_flag("--fit-local-z", local_z, "Fit single-qubit Z phases alongside (theta, phi)");
    fb->callback([&] {
        action = [&](Context &c) { return cmd_feedback(c, fb_theta, fb_phi, dtheta, dphi, max_iter, local_z); };
    });

    auto *scan = app.add_subcommand("scan", "Rotation, phase and echo scans");
    std::string scan_kind = "rotation";
    int scan_points = 33;
    double phi0 = 0, phi_cu = 0;
    scan->add_option("--kind", scan_kind)->check(CLI::IsMember({"rotation", "phase", "echo"}));
    scan->add_option("--points", scan_points);
    scan->add_option("--phi0", phi0, "Frame offset of the phase scans");
    scan->add_option("--phi-cu", phi_cu, "CU phase used by the rotation scan");
    scan->callback([&] {
        action = [&](Context &c) { return cmd_scan(c, scan_kind, scan_points, phi0, phi_cu); };
    });

    auto *dec = app.add_subcommand("decohere", "Identity-sequence decoherence comparison");
    std::vector<double> t1_grid = {1, 2, 5, 10, 20, 50, 100}, tphi_grid = {1, 2, 5, 10, 20, 50, 100};
    dec->add_option("--t1-grid", t1_grid, "T1 values in us")->delimiter(',');
    dec->add_option("--tphi-grid", tphi_grid, "Tphi values in us")->delimiter(',');
    dec->callback([&] { action = [&](Context &c) { return cmd_decohere(c, t1_grid, tphi_grid); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err);
    }
    try {
        Context ctx(cfg, out);
        return action(ctx);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace tcg::tools

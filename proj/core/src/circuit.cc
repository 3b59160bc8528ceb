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

#include "tcg/circuit.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tcg/composer.h"
#include "tcg/noise.h"
#include "tcg/tomography.h"

namespace tcg {

namespace {

constexpr double kPi = std::numbers::pi;

struct GateSpec {
    GateInfo info;
    std::set<std::string> keys;
};

const std::map<std::string, GateSpec> &registry() {
    using G = GateClass;
    static const std::map<std::string, GateSpec> r = {
        {"x01", {{1, G::kSingleQudit, false}, {"theta", "phi", "bare"}}},
        {"x12", {{1, G::kSingleQudit, false}, {"theta", "phi", "bare"}}},
        {"z", {{1, G::kSingleQudit, false}, {"p0", "p1", "p2", "p3"}}},
        {"h", {{1, G::kSingleQudit, false}, {}}},
        {"x", {{1, G::kSingleQudit, false}, {}}},
        {"t", {{1, G::kSingleQudit, false}, {}}},
        {"tdg", {{1, G::kSingleQudit, false}, {}}},
        {"u3", {{1, G::kSingleQudit, false}, {"theta", "phi", "lambda"}}},
        {"cz", {{2, G::kTwoQudit, false}, {}}},
        {"cx", {{2, G::kTwoQudit, false}, {}}},
        {"sqrt_cz", {{2, G::kTwoQudit, false}, {"phi_q"}}},
        {"cp", {{2, G::kTwoQudit, false}, {"theta", "phi_q"}}},
        {"ccp", {{3, G::kThreeQudit, false}, {"theta", "mix"}}},
        {"cu", {{2, G::kComposite, true}, {"theta", "phi", "phi_c1", "phi_c2", "phi_q", "bare"}}},
        {"spcu", {{2, G::kComposite, true}, {"theta", "phi", "bare"}}},
        {"spcu_prep", {{2, G::kComposite, true}, {"theta", "phi", "bare"}}},
        {"cu_prime", {{2, G::kComposite, true}, {"theta", "phi1", "phi2", "bare"}}},
        {"cu_qutrit", {{2, G::kComposite, true}, {"theta", "phi1", "phi2", "phi_q", "bare"}}},
        {"swap", {{2, G::kComposite, true}, {"theta", "phi1", "phi2", "phi3", "phi4", "phi_q", "bare"}}},
        {"ccu", {{3, G::kComposite, true}, {"theta", "phi1", "phi2", "mix", "bare"}}},
    };
    return r;
}

Convention convention_of(const GateInstance &g) {
    return g.param("bare") != 0 ? Convention::kBare : Convention::kUnitary;
}

/// Copies `op` (on smaller local dims) into `dims`, identity on states with any
/// label outside the op's range.
Operator lift(const Operator &op, const std::vector<int> &dims) {
    const HilbertSpace &small = op.space();
    if (small.dims() == dims) {
        return op;
    }
    HilbertSpace big(dims);
    if (small.num_sites() != big.num_sites()) {
        throw std::invalid_argument("lift: site count mismatch");
    }
    std::vector<std::ptrdiff_t> to_small(big.total_dim(), -1);
    for (std::size_t i = 0; i < big.total_dim(); i++) {
        std::vector<int> labels = big.labels_of(i);
        bool inside = true;
        for (int s = 0; s < big.num_sites(); s++) {
            if (small.dim(s) > big.dim(s)) {
                throw std::invalid_argument("gate needs a larger local dimension than the site provides");
            }
            inside = inside && labels[s] < small.dim(s);
        }
        if (inside) {
            to_small[i] = static_cast<std::ptrdiff_t>(small.index_of(labels));
        }
    }
    Mat m = Mat::Identity(big.total_dim(), big.total_dim());
    for (std::size_t i = 0; i < big.total_dim(); i++) {
        for (std::size_t j = 0; j < big.total_dim(); j++) {
            if (to_small[i] >= 0 && to_small[j] >= 0) {
                m(i, j) = op.matrix()(to_small[i], to_small[j]);
            }
        }
    }
    return Operator(big, m);
}

GateInstance make(std::string gate, std::vector<int> sites, std::map<std::string, double> params = {}) {
    // Zero-valued optional keys are dropped so expansions stay compact.
    for (auto it = params.begin(); it != params.end();) {
        it = (it->second == 0 && it->first != "theta") ? params.erase(it) : std::next(it);
    }
    return GateInstance{std::move(gate), std::move(params), std::move(sites)};
}

/// Primitive pulses of `g` in time order.
std::vector<GateInstance> expand(const GateInstance &g) {
    if (!gate_info(g.gate).composite) {
        return {g};
    }
    const double bare = g.param("bare");
    const double theta = g.param("theta");
    const std::vector<int> &s = g.sites;
    const int c = s[0], t = s.size() > 1 ? s[1] : -1;
    if (g.gate == "cu") {
        std::vector<GateInstance> out = {make("sqrt_cz", s, {{"phi_q", g.param("phi_q")}}),
                                         make("x12", {c}, {{"theta", theta}, {"phi", g.param("phi")}, {"bare", bare}})};
        if (g.param("phi_c1") != 0) {
            out.push_back(make("z", {c}, {{"p2", g.param("phi_c1")}}));
        }
        if (g.param("phi_c2") != 0) {
            out.push_back(make("z", {t}, {{"p1", g.param("phi_c2")}}));
        }
        out.push_back(make("sqrt_cz", s, {{"phi_q", g.param("phi_q")}}));
        return out;
    }
    if (g.gate == "spcu" || g.gate == "spcu_prep") {
        GateInstance r = make("x12", {c}, {{"theta", theta}, {"phi", g.param("phi")}, {"bare", bare}});
        GateInstance e = make("sqrt_cz", s);
        return g.gate == "spcu" ? std::vector<GateInstance>{e, r} : std::vector<GateInstance>{r, e};
    }
    if (g.gate == "cu_prime" || g.gate == "cu_qutrit") {
        const std::string rot = g.gate == "cu_prime" ? "x01" : "x12";
        const double phi_q = g.gate == "cu_qutrit" ? g.param("phi_q") : 0;
        return {make("sqrt_cz", s),
                make(rot, {c}, {{"theta", kPi}, {"phi", g.param("phi2")}, {"bare", bare}}),
                make("cp", s, {{"theta", theta}, {"phi_q", phi_q}}),
                make(rot, {c}, {{"theta", kPi}, {"phi", g.param("phi1")}, {"bare", bare}}),
                make("sqrt_cz", s)};
    }
    if (g.gate == "swap") {
        return {make("x12", {c}, {{"theta", kPi}, {"phi", g.param("phi4")}, {"bare", bare}}),
                make("x01", {c}, {{"theta", kPi}, {"phi", g.param("phi3")}, {"bare", bare}}),
                make("cp", s, {{"theta", theta}, {"phi_q", g.param("phi_q")}}),
                make("x01", {c}, {{"theta", kPi}, {"phi", g.param("phi2")}, {"bare", bare}}),
                make("x12", {c}, {{"theta", kPi}, {"phi", g.param("phi1")}, {"bare", bare}})};
    }
    if (g.gate == "ccu") {
        const double mix = g.param("mix");
        return {make("ccp", s, {{"theta", kPi}, {"mix", mix}}),
                make("x01", {s[1]}, {{"theta", kPi}, {"phi", g.param("phi2")}, {"bare", bare}}),
                make("ccp", s, {{"theta", theta}, {"mix", mix}}),
                make("x01", {s[1]}, {{"theta", kPi}, {"phi", g.param("phi1")}, {"bare", bare}}),
                make("ccp", s, {{"theta", kPi}, {"mix", mix}})};
    }
    throw std::logic_error("expand: composite without expansion: " + g.gate);
}

Eigen::Matrix2cd ry(double theta) {
    Eigen::Matrix2cd m;
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    m << c, -s, s, c;
    return m;
}

Eigen::Matrix2cd h2() {
    Eigen::Matrix2cd m;
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

GateInstance u3_gate(int site, const Eigen::Matrix2cd &u) {
    std::vector<double> p = u3_params(u);
    return GateInstance{"u3", {{"theta", p[0]}, {"phi", p[1]}, {"lambda", p[2]}}, {site}};
}

void add_cnot_cz(Circuit &c, int ctrl, int tgt) {
    c.add("h", {tgt}).add("cz", {ctrl, tgt}).add("h", {tgt});
}

/// Controlled-Ry(theta) from two CZs: H, CZ, Ry(theta/2), CZ, Ry(theta/2) H on the target.
void add_cry_cz(Circuit &c, int ctrl, int tgt, double theta) {
    c.add("h", {tgt});
    c.add("cz", {ctrl, tgt});
    c.ops.push_back(u3_gate(tgt, ry(theta / 2)));
    c.add("cz", {ctrl, tgt});
    c.ops.push_back(u3_gate(tgt, ry(theta / 2) * h2()));
}

void check_scheme(const std::string &scheme) {
    if (scheme != "CZ" && scheme != "CU" && scheme != "SPCU") {
        throw std::invalid_argument("unknown preparation scheme '" + scheme + "' (expected CZ, CU or SPCU)");
    }
}

std::vector<double> computational_populations(const std::vector<double> &probs, const HilbertSpace &space) {
    std::vector<double> out;
    for (std::size_t i : computational_indices(space)) {
        out.push_back(probs[i]);
    }
    return out;
}

std::vector<double> diagonal(const Mat &m) {
    std::vector<double> out(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        out[i] = m(i, i).real();
    }
    return out;
}

std::vector<ScanRow> run_scan(const std::vector<double> &xs, const std::function<Circuit(double)> &build,
                              const std::vector<int> &initial) {
    std::vector<ScanRow> rows;
    for (double x : xs) {
        Circuit c = build(x);
        StateVector out = simulate(c, StateVector::basis(c.space(), initial));
        rows.push_back({x, computational_populations(out.probabilities(), c.space())});
    }
    return rows;
}

}  // namespace

double GateInstance::param(const std::string &key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

Circuit Circuit::chain(int n, std::string scheme, int dim) {
    if (n < 1) {
        throw std::invalid_argument("chain needs at least one site");
    }
    Circuit c;
    for (int i = 0; i < n; i++) {
        c.qudits.push_back({"q" + std::to_string(i), dim});
        if (i > 0) {
            c.topology.emplace_back(i - 1, i);
        }
    }
    c.scheme = std::move(scheme);
    return c;
}

HilbertSpace Circuit::space() const {
    std::vector<int> dims;
    for (const auto &q : qudits) {
        dims.push_back(q.dim);
    }
    return HilbertSpace(dims);
}

Circuit &Circuit::add(std::string gate, std::vector<int> sites, std::map<std::string, double> params) {
    ops.push_back(GateInstance{std::move(gate), std::move(params), std::move(sites)});
    return *this;
}

void Circuit::validate() const {
    const int n = static_cast<int>(qudits.size());
    for (const auto &q : qudits) {
        if (q.dim < 2) {
            throw std::invalid_argument("qudit '" + q.name + "' has dimension < 2");
        }
    }
    auto adjacent = [&](int a, int b) {
        return std::any_of(topology.begin(), topology.end(), [&](const auto &e) {
            return (e.first == a && e.second == b) || (e.first == b && e.second == a);
        });
    };
    for (std::size_t k = 0; k < ops.size(); k++) {
        const auto &g = ops[k];
        const std::string where = "op " + std::to_string(k) + " (" + g.gate + ")";
        auto it = registry().find(g.gate);
        if (it == registry().end()) {
            throw std::invalid_argument(where + ": unknown gate");
        }
        for (const auto &[key, value] : g.params) {
            if (!it->second.keys.count(key)) {
                throw std::invalid_argument(where + ": unknown parameter '" + key + "'");
            }
        }
        if (static_cast<int>(g.sites.size()) != it->second.info.arity) {
            throw std::invalid_argument(where + ": wrong number of sites");
        }
        std::set<int> seen;
        for (int s : g.sites) {
            if (s < 0 || s >= n) {
                throw std::out_of_range(where + ": site " + std::to_string(s) + " does not exist");
            }
            if (!seen.insert(s).second) {
                throw std::invalid_argument(where + ": repeated site");
            }
        }
        if (enforce_topology) {
            for (std::size_t i = 1; i < g.sites.size(); i++) {
                if (!adjacent(g.sites[i - 1], g.sites[i])) {
                    throw std::invalid_argument(where + ": sites " + std::to_string(g.sites[i - 1]) + " and " +
                                                std::to_string(g.sites[i]) + " are not coupled");
                }
            }
        }
    }
}

GateInfo gate_info(const std::string &name) {
    auto it = registry().find(name);
    if (it == registry().end()) {
        throw std::invalid_argument("unknown gate '" + name + "'");
    }
    return it->second.info;
}

double gate_duration(const GateInstance &g, const Durations &d) {
    const std::string &n = g.gate;
    if (n == "z") {
        return 0;  // virtual
    }
    if (n == "cz") {
        return d.cz_ns;
    }
    if (n == "cx") {
        return d.cz_ns + 2 * d.single_ns;
    }
    if (n == "sqrt_cz" || n == "cp" || n == "ccp") {
        return d.sqrt_cz_ns;
    }
    if (n == "cu") {
        return d.cu_ns;
    }
    const GateInfo info = gate_info(n);
    if (!info.composite) {
        return d.single_ns;
    }
    double total = 0;
    for (const auto &p : expand(g)) {
        total += gate_duration(p, d);
    }
    return total;
}

Operator gate_operator(const GateInstance &g, const std::vector<int> &local_dims) {
    const std::string &n = g.gate;
    const GateInfo info = gate_info(n);
    if (static_cast<int>(local_dims.size()) != info.arity || g.sites.size() != local_dims.size()) {
        throw std::invalid_argument(n + ": wrong number of sites");
    }
    const int d0 = local_dims[0];
    const Convention conv = convention_of(g);
    const double theta = g.param("theta");
    if (n == "x01") return x01(theta, g.param("phi"), conv, d0);
    if (n == "x12") return x12(theta, g.param("phi"), conv, d0);
    if (n == "z") {
        std::vector<double> p(d0, 0);
        for (int i = 0; i < d0; i++) {
            p[i] = g.param("p" + std::to_string(i));
        }
        return z_phases(p);
    }
    if (n == "h") return hadamard(d0);
    if (n == "x") return u3(kPi, 0, kPi, d0);
    if (n == "t") return t_gate(false, d0);
    if (n == "tdg") return t_gate(true, d0);
    if (n == "u3") return u3(theta, g.param("phi"), g.param("lambda"), d0);
    const int d1 = local_dims[1];
    if (n == "cz") return cz(d0, d1);
    if (n == "cx") return cx(d0, d1);
    if (n == "sqrt_cz") return sqrt_cz(Excursion::kFirst, g.param("phi_q"), d0, d1);
    if (n == "cp") return cp(theta, g.param("phi_q"), Excursion::kFirst, d0, d1);
    if (n == "ccp") {
        const double mix = g.param("mix");
        return ccp(theta, std::cos(mix), std::sin(mix), local_dims);
    }
    ComposedGate composed = [&]() -> ComposedGate {
        const FamilyOptions fam{conv, 0};
        if (n == "cu") {
            return cu(theta, g.param("phi"),
                      CuOptions{g.param("phi_c1"), g.param("phi_c2"), 0, conv, g.param("phi_q")});
        }
        if (n == "spcu" || n == "spcu_prep") {
            return spcu(theta, g.param("phi"), SpcuOptions{0, conv, n == "spcu_prep"});
        }
        if (n == "cu_prime") return cu_prime(theta, g.param("phi1"), g.param("phi2"), fam);
        if (n == "cu_qutrit") return cu_qutrit(theta, g.param("phi1"), g.param("phi2"), g.param("phi_q"), fam);
        if (n == "swap") {
            return swap_family(theta, g.param("phi1"), g.param("phi2"), g.param("phi3"), g.param("phi4"),
                               g.param("phi_q"), fam);
        }
        if (n == "ccu") {
            const double mix = g.param("mix");
            return ccu(theta, g.param("phi1"), g.param("phi2"), std::cos(mix), std::sin(mix), conv);
        }
        throw std::logic_error("gate_operator: unhandled gate " + n);
    }();
    return lift(composed.full, local_dims);
}

Operator gate_operator(const GateInstance &g, const Circuit &c) {
    HilbertSpace space = c.space();
    std::vector<int> dims;
    for (int s : g.sites) {
        dims.push_back(space.dim(s));
    }
    return embed(gate_operator(g, dims), g.sites, space);
}

Circuit expand_composites(const Circuit &c) {
    Circuit out = c;
    out.ops.clear();
    for (const auto &g : c.ops) {
        for (auto &p : expand(g)) {
            out.ops.push_back(std::move(p));
        }
    }
    return out;
}

Schedule schedule(const Circuit &c, DepthPolicy policy, const Durations &d) {
    c.validate();
    Schedule s;
    std::vector<int> last(c.qudits.size(), -1);
    for (std::size_t k = 0; k < c.ops.size(); k++) {
        const auto &g = c.ops[k];
        const bool multi = g.sites.size() > 1;
        int layer = 0;
        for (int site : g.sites) {
            layer = std::max(layer, last[site] + 1);
        }
        if (policy == DepthPolicy::kLayered) {
            while (layer < static_cast<int>(s.moments.size()) && s.moments[layer].multi != multi &&
                   !s.moments[layer].ops.empty()) {
                layer++;
            }
        }
        while (layer >= static_cast<int>(s.moments.size())) {
            s.moments.push_back(Moment{{}, 0, multi});
        }
        Moment &m = s.moments[layer];
        if (m.ops.empty()) {
            m.multi = multi;
        }
        m.multi = m.multi || multi;
        m.ops.push_back(k);
        m.duration_ns = std::max(m.duration_ns, gate_duration(g, d));
        for (int site : g.sites) {
            last[site] = layer;
        }
    }
    return s;
}

Counts depth_and_counts(const Circuit &c, bool expand_ops, DepthPolicy policy) {
    const Circuit target = expand_ops ? expand_composites(c) : c;
    Counts out;
    for (const auto &g : target.ops) {
        (g.sites.size() == 1 ? out.n1q : out.n2q)++;
    }
    out.depth = static_cast<int>(schedule(target, policy).moments.size());
    return out;
}

Circuit ghz_circuit(int m, double tau, const std::string &scheme) {
    if (m < 3) {
        throw std::invalid_argument("ghz_circuit: m must be at least 3");
    }
    if (tau < 0 || tau > 2 * kPi) {
        throw std::invalid_argument("ghz_circuit: tau must lie in [0, 2 pi]");
    }
    check_scheme(scheme);
    Circuit c = Circuit::chain(m, scheme);
    // (|0> + e^{i tau}|1>)/sqrt(2) on the first site.
    c.add("x01", {0}, {{"theta", kPi / 2}, {"phi", tau + kPi / 2}});
    for (int k = 0; k + 1 < m; k++) {
        if (scheme == "CZ") {
            add_cnot_cz(c, k, k + 1);
        } else if (scheme == "CU") {
            c.add("cu", {k, k + 1}, {{"theta", kPi}, {"phi", kPi}});
        } else {
            c.add("spcu_prep", {k, k + 1}, {{"theta", kPi}, {"phi", kPi}});
        }
    }
    return c;
}

Circuit w_circuit(int m, double lambda, const std::string &scheme) {
    if (m < 3) {
        throw std::invalid_argument("w_circuit: m must be at least 3");
    }
    check_scheme(scheme);
    // cos(theta_k / 2) is the weight left on site k once the excitation reaches it.
    std::vector<double> theta(m - 1);
    if (m == 3) {
        if (lambda < -1e-12 || lambda > std::sqrt(2.0) + 1e-12) {
            throw std::invalid_argument("w_circuit: lambda must lie in [0, sqrt(2)]");
        }
        lambda = std::clamp(lambda, 0.0, std::sqrt(2.0));
        theta[0] = 2 * std::acos(std::sqrt(std::max(0.0, 2 - lambda * lambda) / 3));
        theta[1] = 2 * std::acos(lambda / std::sqrt(1 + lambda * lambda));
    } else {
        for (int k = 0; k + 1 < m; k++) {
            theta[k] = 2 * std::acos(1 / std::sqrt(static_cast<double>(m - k)));
        }
    }
    Circuit c = Circuit::chain(m, scheme);
    c.add("x01", {0}, {{"theta", theta[0]}, {"phi", -kPi / 2}});
    auto controlled_flip = [&](int ctrl, int tgt, bool forward) {
        if (scheme == "CZ") {
            add_cnot_cz(c, ctrl, tgt);
        } else if (scheme == "CU") {
            c.add("cu", {ctrl, tgt}, {{"theta", kPi}, {"phi", kPi}});
        } else {
            c.add(forward ? "spcu_prep" : "spcu", {ctrl, tgt}, {{"theta", kPi}, {"phi", kPi}});
        }
    };
    controlled_flip(0, 1, true);
    c.add("x01", {0}, {{"theta", kPi}, {"phi", kPi / 2}});
    for (int k = 1; k + 1 < m; k++) {
        if (scheme == "CZ") {
            add_cry_cz(c, k, k + 1, theta[k]);
        } else {
            c.add(scheme == "CU" ? "cu" : "spcu_prep", {k, k + 1}, {{"theta", theta[k]}, {"phi", kPi}});
        }
        controlled_flip(k + 1, k, false);
    }
    return c;
}

StateVector ghz_state(int m, double tau) {
    HilbertSpace space = HilbertSpace::qutrits(m);
    Vec v = Vec::Zero(space.total_dim());
    v(space.index_of(std::vector<int>(m, 0))) = 1 / std::sqrt(2.0);
    v(space.index_of(std::vector<int>(m, 1))) = std::polar(1 / std::sqrt(2.0), tau);
    return StateVector(space, v);
}

StateVector w_state(int m, double lambda) {
    HilbertSpace space = HilbertSpace::qutrits(m);
    Vec v = Vec::Zero(space.total_dim());
    auto one_hot = [&](int site) {
        std::vector<int> labels(m, 0);
        labels[site] = 1;
        return space.index_of(labels);
    };
    if (m == 3) {
        v(one_hot(2)) = 1 / std::sqrt(3.0);
        v(one_hot(1)) = lambda / std::sqrt(3.0);
        v(one_hot(0)) = std::sqrt(std::max(0.0, 2 - lambda * lambda) / 3);
    } else {
        for (int k = 0; k < m; k++) {
            v(one_hot(k)) = 1 / std::sqrt(static_cast<double>(m));
        }
    }
    return StateVector(space, v);
}

Circuit comparator_circuit() {
    Circuit c;
    for (const char *name : {"a", "b", "gt", "lt"}) {
        c.qudits.push_back({name, 3});
    }
    c.topology = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    c.enforce_topology = true;
    c.scheme = "TCG";
    const std::map<std::string, double> pi = {{"theta", kPi}};
    // Each sqrt_cz parks one branch of (a, b) at level 2, where the X12/X01
    // rotations steer it before the mirrored exchanges bring it back.
    c.add("sqrt_cz", {0, 1});
    c.add("x01", {0}, pi).add("x01", {1}, pi).add("x01", {2}, pi);
    c.add("sqrt_cz", {0, 2}).add("sqrt_cz", {1, 3});
    c.add("x12", {0}, pi).add("x12", {1}, pi);
    c.add("sqrt_cz", {0, 2}).add("sqrt_cz", {1, 3});
    c.add("x01", {0}, pi).add("x01", {1}, pi).add("x01", {3}, pi);
    c.add("sqrt_cz", {0, 1});
    return c;
}

Circuit clifford_comparator_circuit() {
    Circuit c;
    for (const char *name : {"a", "b", "gt", "lt"}) {
        c.qudits.push_back({name, 3});
    }
    c.topology = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}};
    c.scheme = "CZ";
    // Standard 6-CNOT Toffoli listed back to front. Every factor is a symmetric
    // matrix, so the reversed list is the transpose, which is again a Toffoli; this
    // ordering packs into fewer layers around the X conjugations.
    auto toffoli = [&](int c1, int c2, int t) {
        c.add("cx", {c1, c2}).add("tdg", {c2}).add("t", {c1}).add("cx", {c1, c2}).add("h", {t});
        c.add("t", {t}).add("t", {c2}).add("cx", {c1, t}).add("tdg", {t}).add("cx", {c2, t});
        c.add("t", {t}).add("cx", {c1, t}).add("tdg", {t}).add("cx", {c2, t}).add("h", {t});
    };
    c.add("x", {1});
    toffoli(0, 1, 2);
    c.add("x", {1}).add("x", {0});
    toffoli(0, 1, 3);
    c.add("x", {0});
    return c;
}

std::vector<int> comparator_reference(const std::vector<int> &bits) {
    if (bits.size() != 4) {
        throw std::invalid_argument("comparator_reference: needs four bits");
    }
    const int a = bits[0], b = bits[1];
    return {a, b, bits[2] ^ (a & (1 - b)), bits[3] ^ ((1 - a) & b)};
}

Operator circuit_unitary(const Circuit &c) {
    c.validate();
    const HilbertSpace space = c.space();
    Mat u = Mat::Identity(space.total_dim(), space.total_dim());
    for (const auto &g : c.ops) {
        std::vector<int> dims;
        for (int s : g.sites) {
            dims.push_back(space.dim(s));
        }
        apply_on_sites(u, gate_operator(g, dims).matrix(), g.sites, space);
    }
    return Operator(space, u);
}

StateVector simulate(const Circuit &c, const StateVector &initial) {
    c.validate();
    const HilbertSpace space = c.space();
    if (!(initial.space() == space)) {
        throw std::invalid_argument("simulate: initial state does not live on the circuit's space");
    }
    Mat v = initial.amps();
    for (const auto &g : c.ops) {
        std::vector<int> dims;
        for (int s : g.sites) {
            dims.push_back(space.dim(s));
        }
        apply_on_sites(v, gate_operator(g, dims).matrix(), g.sites, space);
    }
    return StateVector(space, v.col(0));
}

DensityMatrix simulate(const Circuit &c, const DensityMatrix &initial, const NoiseModel *noise, const Durations &d) {
    c.validate();
    const HilbertSpace space = c.space();
    if (!(initial.space() == space)) {
        throw std::invalid_argument("simulate: initial state does not live on the circuit's space");
    }
    if (noise != nullptr) {
        Circuit pulses = expand_composites(c);
        return apply_noise(initial, pulses, schedule(pulses, DepthPolicy::kLayered, d), *noise);
    }
    Mat rho = initial.matrix();
    for (const auto &g : c.ops) {
        std::vector<int> dims;
        for (int s : g.sites) {
            dims.push_back(space.dim(s));
        }
        rho = conjugate_on_sites(rho, gate_operator(g, dims).matrix(), g.sites, space);
    }
    return DensityMatrix(space, rho);
}

TruthTable truth_table(const Circuit &c, std::optional<int> shots, std::uint64_t seed, const NoiseModel *noise) {
    const HilbertSpace space = c.space();
    const std::vector<std::size_t> comp = computational_indices(space);
    const std::size_t n = comp.size();
    TruthTable table{Eigen::MatrixXd::Zero(n, n)};
    for (std::size_t col = 0; col < n; col++) {
        StateVector in(space, Vec::Unit(space.total_dim(), comp[col]));
        std::vector<double> probs = noise ? diagonal(simulate(c, DensityMatrix::pure(in), noise).matrix())
                                          : simulate(c, in).probabilities();
        std::vector<double> bins = computational_populations(probs, space);
        if (!shots) {
            for (std::size_t r = 0; r < n; r++) {
                table.matrix(r, col) = bins[r];
            }
            continue;
        }
        double inside = 0;
        for (double &p : bins) {
            p = std::max(p, 0.0);
            inside += p;
        }
        bins.push_back(std::max(0.0, 1 - inside));
        const double total = inside + bins.back();
        for (double &p : bins) {
            p /= total;
        }
        std::vector<std::uint64_t> counts = sample_counts(bins, static_cast<std::uint64_t>(*shots), stream_seed(seed, col));
        for (std::size_t r = 0; r < n; r++) {
            table.matrix(r, col) = *shots > 0 ? static_cast<double>(counts[r]) / *shots : 0.0;
        }
    }
    return table;
}

std::vector<ScanRow> rotation_scan(const std::vector<double> &thetas, double phi_cu) {
    return run_scan(
        thetas,
        [&](double theta) {
            Circuit c = Circuit::chain(2, "CU");
            c.add("cu", {0, 1}, {{"theta", theta}, {"phi", phi_cu}});
            return c;
        },
        {1, 1});
}

std::vector<ScanRow> phase_scan(const std::vector<double> &phis, double phi0) {
    return run_scan(
        phis,
        [&](double phi) {
            Circuit c = Circuit::chain(2, "CU");
            c.add("x01", {0}, {{"theta", kPi}}).add("x01", {1}, {{"theta", kPi / 2}, {"phi", kPi / 2}});
            c.add("cu", {0, 1}, {{"theta", kPi}, {"phi", phi + phi0}});
            c.add("x01", {1}, {{"theta", kPi / 2}, {"phi", -kPi / 2}});
            return c;
        },
        {0, 0});
}

std::vector<ScanRow> echo_phase_scan(const std::vector<double> &phis, double phi0) {
    return run_scan(
        phis,
        [&](double phi) {
            Circuit c = Circuit::chain(2, "CU");
            c.add("x01", {0}, {{"theta", kPi}}).add("x01", {1}, {{"theta", kPi / 2}, {"phi", kPi / 2}});
            c.add("cu", {0, 1}, {{"theta", kPi}, {"phi", phi + phi0}});
            c.add("x01", {1}, {{"theta", kPi}});
            c.add("cu", {0, 1}, {{"theta", kPi}, {"phi", phi + phi0}});
            c.add("x01", {1}, {{"theta", kPi / 2}, {"phi", -kPi / 2}});
            return c;
        },
        {0, 0});
}

std::string to_json(const Circuit &c) {
    nlohmann::json j;
    j["qudits"] = nlohmann::json::array();
    for (const auto &q : c.qudits) {
        j["qudits"].push_back({{"name", q.name}, {"dim", q.dim}});
    }
    j["topology"] = nlohmann::json::array();
    for (const auto &[a, b] : c.topology) {
        j["topology"].push_back({a, b});
    }
    j["ops"] = nlohmann::json::array();
    for (const auto &g : c.ops) {
        j["ops"].push_back({{"gate", g.gate}, {"params", g.params}, {"sites", g.sites}});
    }
    j["scheme"] = c.scheme;
    j["enforce_topology"] = c.enforce_topology;
    return j.dump(2);
}

Circuit circuit_from_json(const std::string &text) {
    Circuit c;
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        for (const auto &q : j.at("qudits")) {
            c.qudits.push_back({q.at("name").get<std::string>(), q.value("dim", 3)});
        }
        if (j.contains("topology")) {
            for (const auto &e : j.at("topology")) {
                c.topology.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            }
        } else {
            for (int i = 1; i < static_cast<int>(c.qudits.size()); i++) {
                c.topology.emplace_back(i - 1, i);
            }
        }
        for (const auto &o : j.at("ops")) {
            GateInstance g;
            g.gate = o.at("gate").get<std::string>();
            g.sites = o.at("sites").get<std::vector<int>>();
            if (o.contains("params")) {
                g.params = o.at("params").get<std::map<std::string, double>>();
            }
            c.ops.push_back(std::move(g));
        }
        c.scheme = j.value("scheme", std::string());
        c.enforce_topology = j.value("enforce_topology", false);
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("circuit JSON: ") + e.what());
    }
    c.validate();
    return c;
}

}  // namespace tcg

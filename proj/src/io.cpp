#include "schurchan/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "schurchan/errors.hpp"

namespace schurchan {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw ValidationError(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(std::string("missing field '") + key + "'");
    return *it;
}

template <typename T>
T get(const Json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("field '") + key + "': " + e.what());
    }
}

double finite(const Json& x) {
    if (!x.is_number()) throw ValidationError("expected a number");
    double v = x.get<double>();
    if (!std::isfinite(v)) throw ValidationError("non-finite number");
    return v;
}

Json pair(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx parse_pair(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("complex entries are [re, im] pairs");
    return {finite(j[0]), finite(j[1])};
}

}  // namespace

void to_json(Json& j, const Staircase& s) { j = s.entries(); }

void from_json(const Json& j, Staircase& s) {
    if (!j.is_array() || j.empty()) throw ValidationError("a staircase is a nonempty integer array");
    std::vector<int> e;
    for (auto& x : j) {
        if (!x.is_number_integer()) throw ValidationError("staircase entries must be integers");
        e.push_back(x.get<int>());
    }
    Staircase r(e);
    validate(r);
    s = r;
}

void to_json(Json& j, const GtPath& p) { j = Json{{"k", p.k}, {"l", p.l}, {"steps", p.steps}}; }

void from_json(const Json& j, GtPath& p) {
    GtPath r;
    r.k = get<int>(j, "k");
    r.l = get<int>(j, "l");
    r.steps = get<std::vector<Staircase>>(j, "steps");
    validate(r);
    p = r;
}

void to_json(Json& j, const Block& b) {
    j = Json{{"label", b.label}, {"multiplicity", b.multiplicity}, {"offset", b.offset}, {"size", b.size}};
}

void from_json(const Json& j, Block& b) {
    b.label = get<Staircase>(j, "label");
    b.multiplicity = get<int>(j, "multiplicity");
    b.offset = get<Index>(j, "offset");
    b.size = get<Index>(j, "size");
}

void to_json(Json& j, const MatrixFile& f) {
    Json data = Json::array();
    for (Index r = 0; r < f.matrix.rows(); ++r)
        for (Index c = 0; c < f.matrix.cols(); ++c) data.push_back(pair(f.matrix(r, c)));
    j = Json{{"rows", f.matrix.rows()}, {"cols", f.matrix.cols()}, {"data", data}};
    if (!f.layout.empty()) j["layout"] = f.layout;
}

void from_json(const Json& j, MatrixFile& f) {
    const auto rows = get<Index>(j, "rows"), cols = get<Index>(j, "cols");
    if (rows < 0 || cols < 0) throw ValidationError("matrix: negative shape");
    const Json& data = field(j, "data");
    if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols)
        throw ValidationError("matrix: data length is not rows*cols");
    MatrixFile r;
    r.matrix.resize(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index c = 0; c < cols; ++c) r.matrix(i, c) = parse_pair(data[i * cols + c]);
    if (j.contains("layout")) r.layout = get<std::vector<Block>>(j, "layout");
    f = std::move(r);
}

Json complex_array(const VecC& v) {
    Json a = Json::array();
    for (Index i = 0; i < v.size(); ++i) a.push_back(pair(v(i)));
    return a;
}

VecC parse_complex_array(const Json& j) {
    if (!j.is_array()) throw ValidationError("expected an array of [re, im] pairs");
    VecC v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = parse_pair(j[i]);
    return v;
}

void to_json(Json& j, const Assignment& a) {
    j = Json{{"lambda", a.lambda}, {"mu", a.mu}, {"gamma", a.gamma}, {"psi", complex_array(a.psi)}};
}

void from_json(const Json& j, Assignment& a) {
    a.lambda = get<Staircase>(j, "lambda");
    a.mu = get<Staircase>(j, "mu");
    a.gamma = get<Staircase>(j, "gamma");
    a.psi = parse_complex_array(field(j, "psi"));
}

void to_json(Json& j, const ExtremalSpec& s) {
    j = Json{{"m", s.m}, {"n", s.n}, {"d", s.d}, {"assignments", s.assignments}};
}

void from_json(const Json& j, ExtremalSpec& s) {
    ExtremalSpec r;
    r.m = get<int>(j, "m");
    r.n = get<int>(j, "n");
    r.d = get<int>(j, "d");
    r.assignments = get<std::vector<Assignment>>(j, "assignments");
    validate(r);
    s = std::move(r);
}

void to_json(Json& j, const ExtremalTriple& t) {
    j = Json{{"lambda", t.lambda}, {"mu", t.mu}, {"gamma", t.gamma}, {"multiplicity", t.multiplicity}};
}

void from_json(const Json& j, ExtremalTriple& t) {
    t.lambda = get<Staircase>(j, "lambda");
    t.mu = get<Staircase>(j, "mu");
    t.gamma = get<Staircase>(j, "gamma");
    t.multiplicity = get<std::uint64_t>(j, "multiplicity");
}

void to_json(Json& j, const PathState& s) {
    Json amps = Json::array();
    for (auto& [p, a] : s.amplitudes) amps.push_back(Json{{"path", p}, {"amplitude", pair(a)}});
    j = Json{{"base", s.base}, {"k", s.k}, {"l", s.l}, {"d", s.d}, {"amplitudes", amps}};
}

void from_json(const Json& j, PathState& s) {
    PathState r;
    r.base = get<Staircase>(j, "base");
    r.k = get<int>(j, "k");
    r.l = get<int>(j, "l");
    r.d = get<int>(j, "d");
    const Json& amps = field(j, "amplitudes");
    if (!amps.is_array()) throw ValidationError("amplitudes must be an array");
    for (auto& e : amps) r.amplitudes[get<GtPath>(e, "path")] = parse_pair(field(e, "amplitude"));
    validate(r);
    s = std::move(r);
}

void to_json(Json& j, const ScheduleStep& s) {
    j = Json{{"phase", to_string(s.phase)}, {"inverse", s.inverse}, {"dual", s.dual},       {"site", s.site},
             {"path_dim", s.path_dim},      {"q_max", s.q_max},     {"live_dim", s.live_dim}};
}

void from_json(const Json& j, ScheduleStep& s) {
    auto phase = get<std::string>(j, "phase");
    if (phase == "uss")
        s.phase = Phase::uss;
    else if (phase == "embedding")
        s.phase = Phase::embedding;
    else if (phase == "emission")
        s.phase = Phase::emission;
    else
        throw ValidationError("unknown phase '" + phase + "'");
    s.inverse = get<bool>(j, "inverse");
    s.dual = get<bool>(j, "dual");
    s.site = get<int>(j, "site");
    s.path_dim = get<Index>(j, "path_dim");
    s.q_max = get<Index>(j, "q_max");
    s.live_dim = get<Index>(j, "live_dim");
}

void to_json(Json& j, const ResourceLedger& l) {
    j = Json{{"num_simple_cg", l.num_simple_cg},
             {"num_simple_dual_cg", l.num_simple_dual_cg},
             {"num_inverse_cg", l.num_inverse_cg},
             {"peak_live_dim", l.peak_live_dim},
             {"classical_samples", l.classical_samples},
             {"r", l.r},
             {"r_prime", l.r_prime},
             {"schedule", l.schedule}};
}

void from_json(const Json& j, ResourceLedger& l) {
    l.num_simple_cg = get<std::uint64_t>(j, "num_simple_cg");
    l.num_simple_dual_cg = get<std::uint64_t>(j, "num_simple_dual_cg");
    l.num_inverse_cg = get<std::uint64_t>(j, "num_inverse_cg");
    l.peak_live_dim = get<Index>(j, "peak_live_dim");
    l.classical_samples = get<std::uint64_t>(j, "classical_samples");
    l.r = get<int>(j, "r");
    l.r_prime = get<int>(j, "r_prime");
    l.schedule = get<std::vector<ScheduleStep>>(j, "schedule");
}

void to_json(Json& j, const CostReport& c) {
    j = Json{{"m", c.m},
             {"n", c.n},
             {"d", c.d},
             {"r", c.r},
             {"r_prime", c.r_prime},
             {"k", c.k},
             {"l", c.l},
             {"uss_cg", c.uss_cg},
             {"dual_cg", c.dual_cg},
             {"embedding_cg", c.embedding_cg},
             {"uss_bits", c.uss_bits},
             {"dual_bits", c.dual_bits},
             {"path_bits", c.path_bits},
             {"uss_gates", c.uss_gates},
             {"dual_gates", c.dual_gates},
             {"embedding_gates", c.embedding_gates},
             {"gate_factor", c.gate_factor},
             {"memory_factor", c.memory_factor},
             {"gate_expr", c.gate_expr},
             {"memory_expr", c.memory_expr},
             {"log_factor", c.log_factor},
             {"p", c.p}};
}

void from_json(const Json& j, CostReport& c) {
    c.m = get<int>(j, "m");
    c.n = get<int>(j, "n");
    c.d = get<int>(j, "d");
    c.r = get<int>(j, "r");
    c.r_prime = get<int>(j, "r_prime");
    c.k = get<int>(j, "k");
    c.l = get<int>(j, "l");
    c.uss_cg = get<std::uint64_t>(j, "uss_cg");
    c.dual_cg = get<std::uint64_t>(j, "dual_cg");
    c.embedding_cg = get<std::uint64_t>(j, "embedding_cg");
    c.uss_bits = get<std::uint64_t>(j, "uss_bits");
    c.dual_bits = get<std::uint64_t>(j, "dual_bits");
    c.path_bits = get<std::uint64_t>(j, "path_bits");
    c.uss_gates = get<std::uint64_t>(j, "uss_gates");
    c.dual_gates = get<std::uint64_t>(j, "dual_gates");
    c.embedding_gates = get<std::uint64_t>(j, "embedding_gates");
    c.gate_factor = get<std::uint64_t>(j, "gate_factor");
    c.memory_factor = get<std::uint64_t>(j, "memory_factor");
    c.gate_expr = get<std::string>(j, "gate_expr");
    c.memory_expr = get<std::string>(j, "memory_expr");
    c.log_factor = get<std::string>(j, "log_factor");
    c.p = get<double>(j, "p");
}

void to_json(Json& j, const VerificationCase& c) {
    j = Json{{"id", c.id}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}};
}

void from_json(const Json& j, VerificationCase& c) {
    c.id = get<std::string>(j, "id");
    c.residual = get<double>(j, "residual");
    c.threshold = get<double>(j, "threshold");
    c.pass = get<bool>(j, "pass");
    if (c.pass != (c.residual <= c.threshold))
        throw ValidationError("verification case '" + c.id + "': pass flag disagrees with its residual");
}

void to_json(Json& j, const VerificationReport& r) {
    j = Json{{"suite", r.suite}, {"seed", r.seed}, {"passed", r.passed()}, {"cases", r.cases}};
}

void from_json(const Json& j, VerificationReport& r) {
    r.suite = get<std::string>(j, "suite");
    r.seed = get<std::uint64_t>(j, "seed");
    r.cases = get<std::vector<VerificationCase>>(j, "cases");
}

Json distribution_json(const RemovalDistribution& dist) {
    Json a = Json::array();
    for (auto& [s, p] : dist) a.push_back(Json{{"shape", s}, {"p", p.str()}});
    return a;
}

RemovalDistribution parse_distribution(const Json& j) {
    if (!j.is_array()) throw ValidationError("distribution must be an array");
    RemovalDistribution out;
    for (auto& e : j) {
        auto text = get<std::string>(e, "p");
        try {
            out[get<Staircase>(e, "shape")] = Rational(text);
        } catch (const std::runtime_error&) {
            throw ValidationError("bad rational '" + text + "'");
        }
    }
    return out;
}

Json histogram_json(const Histogram& h) {
    Json a = Json::array();
    for (auto& [s, c] : h) a.push_back(Json{{"shape", s}, {"count", c}});
    return a;
}

Histogram parse_histogram(const Json& j) {
    if (!j.is_array()) throw ValidationError("histogram must be an array");
    Histogram h;
    for (auto& e : j) h[get<Staircase>(e, "shape")] = get<std::uint64_t>(e, "count");
    return h;
}

Json app_result_json(const AppResult& r) {
    Json j{{"output", MatrixFile{r.output, {}}}, {"ledger", r.ledger}};
    if (r.fidelity) j["fidelity"] = *r.fidelity;
    return j;
}

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << dump(j) << "\n";
}

MatC read_matrix(const std::string& path) { return read_json(path).get<MatrixFile>().matrix; }

void write_matrix(const std::string& path, const MatC& m, const std::vector<Block>& layout) {
    write_json(path, Json(MatrixFile{m, layout}));
}

ExtremalSpec read_spec(const std::string& path) { return read_json(path).get<ExtremalSpec>(); }

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace schurchan

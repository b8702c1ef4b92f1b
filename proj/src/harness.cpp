#include "hardy_means/harness.hpp"

#include "hardy_means/errors.hpp"
#include "hardy_means/hardy.hpp"
#include "hardy_means/qd_mean.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hardy_means {

namespace {

constexpr double kGeometricFloor = 1e-280;

std::string num(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::vector<double> prefix_means(const GeneratorSpec& g, const std::vector<double>& x) {
    if (const auto* tl = std::get_if<TruncatedLinearKind>(&g.kind())) return truncated_prefix_means(tl->M, x);
    if (x.size() > kGenericRatioCap) {
        throw ArgumentError("N = " + std::to_string(x.size()) + " exceeds the cap of 4096 for generic generators");
    }
    const MeanSolver solver(g);
    std::vector<double> out(x.size());
    for (std::size_t n = 1; n <= x.size(); ++n) {
        const std::span prefix(x.data(), n);
        out[n - 1] = n == 1 ? x[0] : solver.solve(prefix, out[n - 2]).value;
    }
    return out;
}

RatioReport ratio_against(const GeneratorSpec& g, const std::vector<double>& x, double constant) {
    if (x.empty()) throw ArgumentError("ratio needs at least one term");
    const auto means = prefix_means(g, x);
    RatioReport rep;
    double num_sum = 0.0;
    double den_sum = 0.0;
    std::size_t next = 1;
    for (std::size_t n = 1; n <= x.size(); ++n) {
        num_sum += means[n - 1];
        den_sum += x[n - 1];
        if (n == next || n == x.size()) {
            rep.partial_ratios.emplace_back(n, num_sum / den_sum);
            if (n == next) next *= 2;
        }
    }
    rep.final_ratio = num_sum / den_sum;
    rep.theoretical_constant = constant;
    rep.dominated = rep.final_ratio <= constant + 1e-9;
    return rep;
}

}  // namespace

void SequenceSpec::check() const {
    if (N == 0) throw ArgumentError("sequence length N must be >= 1");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw ArgumentError("sequence scale must be positive");
    if (const auto* g = std::get_if<GeometricSeq>(&kind); g && !(g->r > 0.0 && g->r < 1.0)) {
        throw ArgumentError("geometric ratio must lie in (0, 1)");
    }
    if (const auto* p = std::get_if<PowerDecaySeq>(&kind); p && !(p->s > 1.0 && std::isfinite(p->s))) {
        throw ArgumentError("power_decay exponent must be > 1");
    }
}

std::string SequenceSpec::describe() const {
    struct Visitor {
        std::string operator()(const GeometricSeq& g) const { return "geometric(" + num(g.r) + ")"; }
        std::string operator()(const PowerDecaySeq& p) const { return "power_decay(" + num(p.s) + ")"; }
        std::string operator()(const ConstantSeq&) const { return "constant"; }
        std::string operator()(const CsvSeq& c) const { return "csv(" + c.path + ")"; }
    };
    std::string id = std::visit(Visitor{}, kind);
    if (scale != 1.0) id += "*" + num(scale);
    return id;
}

std::vector<double> read_csv_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto last = line.find_last_not_of(" \t\r,");
        const std::string cell = line.substr(first, last - first + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != cell.size()) {
            // A non-numeric first line is a header.
            if (out.empty() && lineno == 1) continue;
            throw IoError(path + ":" + std::to_string(lineno) + ": not a number: '" + cell + "'");
        }
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw DomainError(path + ":" + std::to_string(lineno) + ": entries must be positive and finite");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<double> generate(const SequenceSpec& seq) {
    seq.check();
    std::vector<double> x(seq.N);
    if (const auto* g = std::get_if<GeometricSeq>(&seq.kind)) {
        double term = seq.scale;
        for (auto& v : x) {
            v = std::max(term, seq.scale * kGeometricFloor);
            term *= g->r;
        }
    } else if (const auto* p = std::get_if<PowerDecaySeq>(&seq.kind)) {
        for (std::size_t n = 0; n < x.size(); ++n) x[n] = seq.scale * std::pow(static_cast<double>(n + 1), -p->s);
    } else if (std::holds_alternative<ConstantSeq>(seq.kind)) {
        std::fill(x.begin(), x.end(), seq.scale);
    } else {
        const auto& path = std::get<CsvSeq>(seq.kind).path;
        const auto data = read_csv_column(path);
        if (data.size() < seq.N) {
            throw IoError(path + " has " + std::to_string(data.size()) + " entries, N = " + std::to_string(seq.N));
        }
        for (std::size_t n = 0; n < x.size(); ++n) x[n] = seq.scale * data[n];
    }
    return x;
}

RatioReport hardy_ratio(const GeneratorSpec& g, const std::vector<double>& x) {
    return ratio_against(g, x, theoretical_constant(g).constant);
}

RatioReport hardy_ratio(const GeneratorSpec& g, const SequenceSpec& seq) { return hardy_ratio(g, generate(seq)); }

std::vector<SweepRow> sweep(const SweepConfig& config) {
    std::vector<SweepRow> rows;
    for (const auto& cell : config.generators) {
        std::string constant_error;
        double constant = kInf;
        try {
            constant = theoretical_constant(cell.generator).constant;
        } catch (const Error& e) {
            constant_error = e.what();
        }
        for (const auto& seq : config.sequences) {
            SweepRow row;
            row.generator = cell.generator_id;
            row.sequence = seq.describe();
            row.N = seq.N;
            if (!constant_error.empty()) {
                row.error = "theoretical constant: " + constant_error;
                rows.push_back(std::move(row));
                continue;
            }
            try {
                const auto rep = ratio_against(cell.generator, generate(seq), constant);
                row.ratio = rep.final_ratio;
                row.constant = constant;
                row.margin = constant - row.ratio;
                row.dominated = rep.dominated;
            } catch (const Error& e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "generator,sequence,N,ratio,constant,margin,dominated,error\n";
    for (const auto& r : rows) {
        os << csv_field(r.generator) << ',' << csv_field(r.sequence) << ',' << r.N << ',';
        if (r.error.empty()) {
            os << num(r.ratio) << ',' << num(r.constant) << ',' << num(r.margin) << ','
               << (r.dominated ? "true" : "false") << ',';
        } else {
            os << ",,,false," << csv_field(r.error);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace hardy_means

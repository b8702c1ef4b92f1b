#pragma once

#include "hardy_means/generator.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hardy_means {

struct GeometricSeq {
    double r;
};
struct PowerDecaySeq {
    double s;
};
struct ConstantSeq {};
struct CsvSeq {
    std::string path;
};

/// Deterministic positive sequence x_1..x_N used by the empirical harness.
struct SequenceSpec {
    std::variant<GeometricSeq, PowerDecaySeq, ConstantSeq, CsvSeq> kind;
    std::size_t N = 1;
    double scale = 1.0;

    /// Throws ArgumentError for r outside (0, 1), s <= 1, N = 0 or scale <= 0.
    void check() const;
    /// Short identifier such as "geometric(0.3)".
    [[nodiscard]] std::string describe() const;
};

/// The N terms. Geometric terms are floored at scale * 1e-280 so that long
/// sequences stay positive instead of underflowing to zero. CSV input reads
/// one value per line (blank lines and '#' comments skipped) and must supply
/// at least N positive entries.
[[nodiscard]] std::vector<double> generate(const SequenceSpec& seq);

/// One-column CSV of positive reals. Throws IoError / DomainError.
[[nodiscard]] std::vector<double> read_csv_column(const std::string& path);

inline constexpr std::size_t kGenericRatioCap = 4096;

struct RatioReport {
    std::vector<std::pair<std::size_t, double>> partial_ratios;  ///< at N = 1, 2, 4, ... and the final N
    double final_ratio = 0.0;
    double theoretical_constant = kInf;
    bool dominated = true;
};

/// sum_{n<=N} E_g(x_1..x_n) / sum_{n<=N} x_n. Truncated generators use the
/// O(N log^2 N) prefix algorithm; other kinds solve every prefix and are capped
/// at N = 4096 (ArgumentError beyond).
[[nodiscard]] RatioReport hardy_ratio(const GeneratorSpec& g, const SequenceSpec& seq);

/// Same ratio for explicit data (no sequence generator involved).
[[nodiscard]] RatioReport hardy_ratio(const GeneratorSpec& g, const std::vector<double>& x);

struct SweepCell {
    std::string generator_id;
    GeneratorSpec generator;
};

struct SweepConfig {
    std::vector<SweepCell> generators;
    std::vector<SequenceSpec> sequences;
};

struct SweepRow {
    std::string generator;
    std::string sequence;
    std::size_t N = 0;
    double ratio = 0.0;
    double constant = kInf;
    double margin = kInf;  ///< constant - ratio
    bool dominated = false;
    std::string error;     ///< empty unless the cell failed
};

/// One row per generator x sequence cell in config order. A failing cell is
/// recorded in its row and the sweep moves on.
[[nodiscard]] std::vector<SweepRow> sweep(const SweepConfig& config);

/// CSV with header generator,sequence,N,ratio,constant,margin,dominated,error.
[[nodiscard]] std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace hardy_means

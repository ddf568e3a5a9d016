#pragma once

// Empirical workflow: monthly inflation/unemployment data -> expected
// inflation pi_E = p + beta u -> empirical, continuous, discrete and
// time-scale losses -> selection of the sampling period h = T/N whose
// optimal loss is closest to the empirical one.

#include "tsloss/elmodel.hpp"
#include "tsloss/timescale.hpp"

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsloss::pipeline {

struct YearMonth {
    int year = 0;
    int month = 1;

    /// Parses "YYYY-MM"; std::nullopt on malformed input.
    static std::optional<YearMonth> parse(std::string_view text);
    std::string label() const;
    YearMonth next() const noexcept;

    auto operator<=>(const YearMonth&) const = default;
};

/// Inclusive month interval.
struct MonthRange {
    YearMonth first;
    YearMonth last;

    static MonthRange calendar_year(int year) { return {{year, 1}, {year, 12}}; }
    bool contains(const YearMonth& m) const noexcept { return first <= m && m <= last; }
};

struct Observation {
    YearMonth date;
    double inflation;    // percent
    double unemployment; // percent
};

/// Consecutive monthly observations (strictly ascending, no gaps, finite rates).
class EconSeries {
public:
    explicit EconSeries(std::vector<Observation> observations);

    std::span<const Observation> observations() const noexcept { return obs_; }
    std::size_t size() const noexcept { return obs_.size(); }
    const Observation& operator[](std::size_t i) const noexcept { return obs_[i]; }

private:
    std::vector<Observation> obs_;
};

/// Reads CSV with header `date,inflation,unemployment`.
/// Throws ParseError (line/column), GapError (missing month), RangeError (empty window).
EconSeries load_series(std::istream& source, std::optional<MonthRange> window = std::nullopt);

/// pi_E[k] = p[k] + beta u[k] on the monthly grid (h = 1).
GridFunction expected_inflation(const EconSeries& series, double beta);

/// Lambda_E = Lambda_1(pi_E); requires pi_E on h = 1 with N = T.
double empirical_loss(const GridFunction& piE, const ModelParams& params);

struct Candidate {
    std::size_t steps;
    double h;
    double lambda_h;
    double abs_error;
};

struct SkippedCandidate {
    std::size_t steps;
    double h;
    std::string reason;
};

struct SweepReport {
    std::string label;
    double horizon = 0.0;
    std::vector<Candidate> candidates; // ascending N
    std::vector<SkippedCandidate> skipped;
    std::optional<std::size_t> best;   // index into candidates

    double lambda_E = 0.0;
    double lambda_C = 0.0;
    double lambda_D = 0.0;

    // Monthly samples t = 0..T of the four curves.
    std::vector<double> empirical;
    std::vector<double> continuous;
    std::vector<double> discrete;
    std::vector<double> timescale; // empty when no candidate survived

    double best_h() const;
    double lambda_h() const;
    /// (Lambda_x - Lambda_E) / Lambda_E
    double relerr_h() const;
    double relerr_C() const;
    double relerr_D() const;
};

inline constexpr std::size_t kMaxSweepSteps = 10'000;

/// {n_min, ..., n_max}.
std::vector<std::size_t> step_range(std::size_t n_min, std::size_t n_max);

/// Evaluates every h = T/N for N in `steps` (T = months - 1) against the
/// window's empirical loss. Boundary data come from the first and last month.
/// Candidates that fail (e.g. DegenerateLeadingCoefficient) land in `skipped`.
SweepReport sweep_h(const EconSeries& window, const ModelParams& params_template,
                    std::span<const std::size_t> steps, std::string label = {});

enum class ReportFormat { Markdown, Csv, PlotData, Json };

std::optional<ReportFormat> parse_format(std::string_view name);

std::string render_report(const SweepReport& report, ReportFormat format);

/// Inverse of render_report(..., Json).
SweepReport report_from_json(std::string_view text);

} // namespace tsloss::pipeline

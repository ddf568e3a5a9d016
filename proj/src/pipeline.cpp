#include "tsloss/pipeline.hpp"

#include "tsloss/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <sstream>
#include <thread>

namespace tsloss::pipeline {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    double value = 0.0;
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, std::chars_format::fixed);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

[[noreturn]] void parse_error(std::size_t line, std::size_t column, std::string_view name, const std::string& why) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + " (" +
                                           std::string(name) + "): " + why);
}

void require_consecutive(std::span<const Observation> obs) {
    for (std::size_t i = 1; i < obs.size(); ++i) {
        const YearMonth expected = obs[i - 1].date.next();
        if (obs[i].date != expected) {
            throw Error(ErrorKind::GapError, "missing month " + expected.label() + " (between " +
                                                 obs[i - 1].date.label() + " and " + obs[i].date.label() + ")");
        }
    }
}

std::string fmt10(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::vector<double> monthly_samples(double horizon, auto&& path) {
    const auto months = static_cast<std::size_t>(std::llround(horizon)) + 1;
    std::vector<double> out(months);
    for (std::size_t k = 0; k < months; ++k) out[k] = path(static_cast<double>(k));
    return out;
}

} // namespace

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') return std::nullopt;
    int year = 0;
    int month = 0;
    auto [p1, e1] = std::from_chars(text.data(), text.data() + 4, year);
    auto [p2, e2] = std::from_chars(text.data() + 5, text.data() + 7, month);
    if (e1 != std::errc() || p1 != text.data() + 4 || e2 != std::errc() || p2 != text.data() + 7) {
        return std::nullopt;
    }
    if (month < 1 || month > 12) return std::nullopt;
    return YearMonth{year, month};
}

std::string YearMonth::label() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

YearMonth YearMonth::next() const noexcept {
    return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

EconSeries::EconSeries(std::vector<Observation> observations) : obs_(std::move(observations)) {
    for (std::size_t i = 0; i < obs_.size(); ++i) {
        if (!std::isfinite(obs_[i].inflation) || !std::isfinite(obs_[i].unemployment)) {
            throw Error(ErrorKind::InvalidArgument, "non-finite rate at " + obs_[i].date.label());
        }
        if (i > 0 && !(obs_[i - 1].date < obs_[i].date)) {
            throw Error(ErrorKind::InvalidArgument, "dates not strictly ascending at " + obs_[i].date.label());
        }
    }
    require_consecutive(obs_);
}

EconSeries load_series(std::istream& source, std::optional<MonthRange> window) {
    static constexpr std::string_view kColumns[] = {"date", "inflation", "unemployment"};
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<Observation> rows;

    while (std::getline(source, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');

        if (!have_header) {
            if (fields.size() != 3 || fields[0] != kColumns[0] || fields[1] != kColumns[1] ||
                fields[2] != kColumns[2]) {
                parse_error(line_no, 1, "header", "expected header 'date,inflation,unemployment'");
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 3) {
            parse_error(line_no, std::min<std::size_t>(fields.size(), 4), "row",
                        "expected 3 fields, got " + std::to_string(fields.size()));
        }
        const auto date = YearMonth::parse(fields[0]);
        if (!date) parse_error(line_no, 1, kColumns[0], "expected YYYY-MM, got '" + std::string(fields[0]) + "'");
        const auto p = parse_double(fields[1]);
        if (!p) parse_error(line_no, 2, kColumns[1], "not a decimal number: '" + std::string(fields[1]) + "'");
        const auto u = parse_double(fields[2]);
        if (!u) parse_error(line_no, 3, kColumns[2], "not a decimal number: '" + std::string(fields[2]) + "'");
        if (!rows.empty() && !(rows.back().date < *date)) {
            parse_error(line_no, 1, kColumns[0], date->label() + " does not follow " + rows.back().date.label());
        }
        rows.push_back({*date, *p, *u});
    }
    if (!have_header) throw Error(ErrorKind::ParseError, "line 1, column 1 (header): empty input");

    if (window) {
        std::vector<Observation> inside;
        std::copy_if(rows.begin(), rows.end(), std::back_inserter(inside),
                     [&](const Observation& o) { return window->contains(o.date); });
        if (inside.empty()) {
            throw Error(ErrorKind::RangeError, "no observations in " + window->first.label() + ".." +
                                                   window->last.label());
        }
        if (inside.front().date != window->first) {
            throw Error(ErrorKind::GapError, "missing month " + window->first.label());
        }
        require_consecutive(inside);
        if (inside.back().date != window->last) {
            throw Error(ErrorKind::GapError, "missing month " + inside.back().date.next().label());
        }
        rows = std::move(inside);
    } else if (rows.empty()) {
        throw Error(ErrorKind::RangeError, "the input has no observations");
    }
    require_consecutive(rows);
    return EconSeries(std::move(rows));
}

GridFunction expected_inflation(const EconSeries& series, double beta) {
    if (series.size() == 0) throw Error(ErrorKind::InvalidArgument, "empty series");
    if (!(beta > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
    std::vector<double> pi(series.size());
    for (std::size_t k = 0; k < pi.size(); ++k) pi[k] = series[k].inflation + beta * series[k].unemployment;
    return GridFunction(PeriodicScale(1.0, series.size() - 1), std::move(pi));
}

double empirical_loss(const GridFunction& piE, const ModelParams& params) {
    if (piE.scale().step() != 1.0 || static_cast<double>(piE.scale().steps()) != params.horizon()) {
        throw Error(ErrorKind::ScaleMismatch, "empirical path must be monthly with N = T = " +
                                                  std::to_string(params.horizon()));
    }
    return social_loss_hz(params, 1.0, piE);
}

double SweepReport::best_h() const { return best ? candidates[*best].h : kNaN; }
double SweepReport::lambda_h() const { return best ? candidates[*best].lambda_h : kNaN; }
double SweepReport::relerr_h() const { return (lambda_h() - lambda_E) / lambda_E; }
double SweepReport::relerr_C() const { return (lambda_C - lambda_E) / lambda_E; }
double SweepReport::relerr_D() const { return (lambda_D - lambda_E) / lambda_E; }

std::vector<std::size_t> step_range(std::size_t n_min, std::size_t n_max) {
    if (n_min < 3 || n_min > n_max || n_max > kMaxSweepSteps) {
        throw Error(ErrorKind::InvalidArgument, "step range must satisfy 3 <= n_min <= n_max <= " +
                                                    std::to_string(kMaxSweepSteps));
    }
    std::vector<std::size_t> out(n_max - n_min + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = n_min + i;
    return out;
}

SweepReport sweep_h(const EconSeries& window, const ModelParams& params_template, std::span<const std::size_t> steps,
                    std::string label) {
    if (window.size() < 4) {
        throw Error(ErrorKind::RangeError, "a sweep window needs at least 4 months, got " +
                                               std::to_string(window.size()));
    }
    for (const std::size_t n : steps) {
        if (n < 3 || n > kMaxSweepSteps) {
            throw Error(ErrorKind::InvalidArgument, "candidate N=" + std::to_string(n) + " outside [3, " +
                                                        std::to_string(kMaxSweepSteps) + "]");
        }
    }
    std::vector<std::size_t> sorted(steps.begin(), steps.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    const GridFunction piE = expected_inflation(window, params_template.beta());
    const double T = static_cast<double>(window.size() - 1);
    const ModelParams params = params_template.with_horizon(T).with_boundary(piE.front(), piE.back());

    SweepReport report;
    report.label = std::move(label);
    report.horizon = T;
    report.lambda_E = empirical_loss(piE, params);

    const ClosedFormPath cont = optimal_path_continuous(params);
    report.lambda_C = social_loss_continuous(params, cont);
    const ClosedFormPath disc = optimal_path_hz(params, 1.0);
    report.lambda_D = social_loss_hz(params, 1.0, disc.sample());

    // Candidates are independent; each worker fills its own slots.
    struct Outcome {
        std::optional<Candidate> ok;
        std::string reason;
    };
    std::vector<Outcome> outcomes(sorted.size());
    const auto evaluate = [&](std::size_t i) {
        const double h = T / static_cast<double>(sorted[i]);
        try {
            const ClosedFormPath path = optimal_path_hz(params, h);
            const double value = social_loss_hz(params, h, path.sample());
            outcomes[i].ok = Candidate{sorted[i], h, value, std::abs(value - report.lambda_E)};
        } catch (const Error& e) {
            outcomes[i].reason = e.what();
        }
    };
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, sorted.size() / 8));
    if (workers <= 1) {
        for (std::size_t i = 0; i < sorted.size(); ++i) evaluate(i);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < sorted.size(); i += workers) evaluate(i);
            });
        }
    }

    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double h = T / static_cast<double>(sorted[i]);
        if (outcomes[i].ok) {
            report.candidates.push_back(*outcomes[i].ok);
        } else {
            report.skipped.push_back({sorted[i], h, outcomes[i].reason});
        }
    }
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        if (!report.best || report.candidates[i].abs_error < report.candidates[*report.best].abs_error) {
            report.best = i;
        }
    }

    report.empirical.assign(piE.values().begin(), piE.values().end());
    report.continuous = monthly_samples(T, cont);
    report.discrete = monthly_samples(T, disc);
    if (report.best) {
        report.timescale = monthly_samples(T, optimal_path_hz(params, report.best_h()));
    }
    return report;
}

std::optional<ReportFormat> parse_format(std::string_view name) {
    if (name == "markdown" || name == "md") return ReportFormat::Markdown;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "plotdata" || name == "tsv") return ReportFormat::PlotData;
    if (name == "json") return ReportFormat::Json;
    return std::nullopt;
}

namespace {

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                         bool markdown) {
    std::ostringstream out;
    const auto emit = [&](const std::vector<std::string>& cells) {
        if (markdown) {
            out << '|';
            for (const auto& c : cells) out << ' ' << c << " |";
        } else {
            for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        }
        out << '\n';
    };
    emit(header);
    if (markdown) {
        out << '|';
        for (std::size_t i = 0; i < header.size(); ++i) out << "---|";
        out << '\n';
    }
    for (const auto& r : rows) emit(r);
    return out.str();
}

nlohmann::json to_json(const SweepReport& r) {
    nlohmann::json j;
    j["label"] = r.label;
    j["horizon"] = r.horizon;
    j["lambda_E"] = r.lambda_E;
    j["lambda_C"] = r.lambda_C;
    j["lambda_D"] = r.lambda_D;
    j["best"] = r.best ? nlohmann::json(*r.best) : nlohmann::json(nullptr);
    auto& cands = j["candidates"] = nlohmann::json::array();
    for (const auto& c : r.candidates) {
        cands.push_back({{"N", c.steps}, {"h", c.h}, {"lambda_h", c.lambda_h}, {"abs_error", c.abs_error}});
    }
    auto& skipped = j["skipped"] = nlohmann::json::array();
    for (const auto& s : r.skipped) skipped.push_back({{"N", s.steps}, {"h", s.h}, {"reason", s.reason}});
    j["paths"] = {{"empirical", r.empirical},
                  {"continuous", r.continuous},
                  {"discrete", r.discrete},
                  {"timescale", r.timescale}};
    return j;
}

} // namespace

std::string render_report(const SweepReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::Markdown:
    case ReportFormat::Csv: {
        const bool md = format == ReportFormat::Markdown;
        std::vector<std::vector<std::string>> values;
        std::vector<std::vector<std::string>> errors;
        if (report.best) {
            values.push_back({report.label, fmt10(report.lambda_C), fmt10(report.lambda_E), fmt10(report.lambda_h()),
                              fmt10(report.lambda_D), fmt10(report.best_h())});
            errors.push_back({report.label, fmt10(report.relerr_h()), fmt10(report.relerr_C()),
                              fmt10(report.relerr_D())});
        }
        return render_table({"year", "lambda_C", "lambda_E", "lambda_h", "lambda_D", "best_h"}, values, md) + "\n" +
               render_table({"year", "relerr_h", "relerr_C", "relerr_D"}, errors, md);
    }
    case ReportFormat::PlotData: {
        std::ostringstream out;
        out << "t\tempirical\tcontinuous\tdiscrete\ttimescale\n";
        for (std::size_t k = 0; k < report.empirical.size(); ++k) {
            const auto at = [k](const std::vector<double>& v) { return k < v.size() ? v[k] : kNaN; };
            out << k << '\t' << fmt10(report.empirical[k]) << '\t' << fmt10(at(report.continuous)) << '\t'
                << fmt10(at(report.discrete)) << '\t' << fmt10(at(report.timescale)) << '\n';
        }
        return out.str();
    }
    case ReportFormat::Json:
        return to_json(report).dump(2) + "\n";
    }
    return {};
}

SweepReport report_from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        SweepReport r;
        r.label = j.at("label").get<std::string>();
        r.horizon = j.at("horizon").get<double>();
        r.lambda_E = j.at("lambda_E").get<double>();
        r.lambda_C = j.at("lambda_C").get<double>();
        r.lambda_D = j.at("lambda_D").get<double>();
        if (!j.at("best").is_null()) r.best = j.at("best").get<std::size_t>();
        for (const auto& c : j.at("candidates")) {
            r.candidates.push_back({c.at("N").get<std::size_t>(), c.at("h").get<double>(),
                                    c.at("lambda_h").get<double>(), c.at("abs_error").get<double>()});
        }
        for (const auto& s : j.at("skipped")) {
            r.skipped.push_back({s.at("N").get<std::size_t>(), s.at("h").get<double>(),
                                 s.at("reason").get<std::string>()});
        }
        const auto& paths = j.at("paths");
        r.empirical = paths.at("empirical").get<std::vector<double>>();
        r.continuous = paths.at("continuous").get<std::vector<double>>();
        r.discrete = paths.at("discrete").get<std::vector<double>>();
        r.timescale = paths.at("timescale").get<std::vector<double>>();
        if (r.best && *r.best >= r.candidates.size()) {
            throw Error(ErrorKind::ParseError, "best index out of range");
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("stored report: ") + e.what());
    }
}

} // namespace tsloss::pipeline

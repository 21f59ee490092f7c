#include "surrogate/scoring.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace surrogate {

namespace {

constexpr double kScoreTolerance = 1e-9;

std::string fixed(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    return buffer;
}

double quality_of(std::optional<Cost> achieved, std::optional<Cost> reference) {
    if (!achieved || !reference || *achieved <= 0)
        return 0.0;
    return static_cast<double>(*reference) / static_cast<double>(*achieved);
}

std::vector<std::string> first_seen(const std::vector<std::string> &items) {
    std::vector<std::string> out;
    for (const std::string &item : items)
        if (std::find(out.begin(), out.end(), item) == out.end())
            out.push_back(item);
    return out;
}

} // namespace

std::string to_string(ReferenceKind kind) {
    return kind == ReferenceKind::Oracle ? "oracle" : "best";
}

ReferenceKind parse_reference_kind(const std::string &text) {
    if (text == "oracle") return ReferenceKind::Oracle;
    if (text == "best") return ReferenceKind::BestOfRuns;
    throw std::invalid_argument("unknown reference '" + text + "'");
}

std::optional<Cost> reference_cost(const std::vector<RunSummary> &runs,
                                   const std::string &problem_id, ReferenceKind kind) {
    std::optional<Cost> oracle;
    std::optional<Cost> best;
    for (const RunSummary &r : runs) {
        if (r.problem_id() != problem_id)
            continue;
        if (r.oracle_cost)
            oracle = oracle ? std::min(*oracle, *r.oracle_cost) : *r.oracle_cost;
        if (r.best_cost)
            best = best ? std::min(*best, *r.best_cost) : *r.best_cost;
    }
    if (kind == ReferenceKind::Oracle && oracle)
        return oracle;
    return best;
}

std::vector<int> dense_ranks(const std::vector<double> &scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    std::vector<int> ranks(scores.size(), 0);
    int rank = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || scores[order[i - 1]] - scores[order[i]] > kScoreTolerance)
            ++rank;
        ranks[order[i]] = rank;
    }
    return ranks;
}

ScoreReport ipc_score(const std::vector<RunSummary> &runs, ReferenceKind kind) {
    ScoreReport report;
    report.reference = kind;
    std::vector<std::string> problem_ids;
    std::vector<std::string> variant_ids;
    for (const RunSummary &r : runs) {
        problem_ids.push_back(r.problem_id());
        variant_ids.push_back(r.variant);
    }
    problem_ids = first_seen(problem_ids);
    variant_ids = first_seen(variant_ids);
    report.problem_count = static_cast<int>(problem_ids.size());

    std::map<std::string, std::optional<Cost>> references;
    for (const std::string &p : problem_ids)
        references[p] = reference_cost(runs, p, kind);

    std::map<std::string, std::size_t> variant_index;
    for (const std::string &v : variant_ids) {
        variant_index[v] = report.variants.size();
        report.variants.push_back({v, 0.0, 0, 0.0, 0});
    }
    std::map<std::string, std::size_t> problem_index;
    for (const std::string &p : problem_ids) {
        problem_index[p] = report.problems.size();
        ProblemRanking ranking;
        ranking.problem_id = p;
        ranking.reference = references[p];
        for (const std::string &v : variant_ids)
            ranking.variants.push_back({v, 0.0, 0, 0.0, 0});
        report.problems.push_back(std::move(ranking));
    }

    for (const RunSummary &r : runs) {
        RunScore score;
        score.problem_id = r.problem_id();
        score.run_id = r.run_id;
        score.variant = r.variant;
        score.solved = r.solved();
        score.quality = quality_of(r.best_cost, references[score.problem_id]);
        VariantScore &total = report.variants[variant_index[r.variant]];
        total.score += score.quality;
        total.coverage += score.solved ? 1 : 0;
        VariantScore &cell =
            report.problems[problem_index[score.problem_id]].variants[variant_index[r.variant]];
        cell.score += score.quality;
        cell.coverage += score.solved ? 1 : 0;
        report.runs.push_back(std::move(score));
    }

    std::vector<double> totals;
    for (VariantScore &v : report.variants) {
        v.percent = report.problem_count ? 100.0 * v.score / report.problem_count : 0.0;
        totals.push_back(v.score);
    }
    std::vector<int> ranks = dense_ranks(totals);
    for (std::size_t i = 0; i < ranks.size(); ++i)
        report.variants[i].rank = ranks[i];
    for (ProblemRanking &p : report.problems) {
        std::vector<double> cells;
        for (VariantScore &v : p.variants) {
            v.percent = 100.0 * v.score;
            cells.push_back(v.score);
        }
        std::vector<int> cell_ranks = dense_ranks(cells);
        for (std::size_t i = 0; i < cell_ranks.size(); ++i)
            p.variants[i].rank = cell_ranks[i];
    }
    return report;
}

std::string scores_csv(const ScoreReport &report) {
    std::string out =
        csv_line({"problem_id", "run_id", "quality_ipc2008_" + to_string(report.reference),
                  "coverage_flag"});
    for (const RunScore &s : report.runs)
        out += csv_line({s.problem_id, s.run_id, fixed(s.quality), s.solved ? "1" : "0"});
    for (const VariantScore &v : report.variants)
        out += csv_line({"AGGREGATE", v.variant, fixed(v.score), std::to_string(v.coverage)});
    return out;
}

std::string scores_markdown(const ScoreReport &report) {
    std::ostringstream out;
    out << "## IPC 2008 quality score (reference: " << to_string(report.reference) << ", "
        << report.problem_count << " problems)\n\n";
    out << "| Variant | Score | Percent | Coverage | Rank |\n";
    out << "|---|---:|---:|---:|---:|\n";
    for (const VariantScore &v : report.variants)
        out << "| " << v.variant << " | " << fixed(v.score) << " | " << fixed(v.percent)
            << "% | " << v.coverage << " | " << v.rank << " |\n";
    for (const ProblemRanking &p : report.problems) {
        out << "\n### " << p.problem_id << " (reference cost "
            << (p.reference ? std::to_string(*p.reference) : std::string("none")) << ")\n\n";
        out << "| Variant | Score | Rank |\n";
        out << "|---|---:|---:|\n";
        for (const VariantScore &v : p.variants)
            out << "| " << v.variant << " | " << fixed(v.score) << " | " << v.rank << " |\n";
    }
    return out.str();
}

std::string to_string(CurveAxis axis) {
    return axis == CurveAxis::Expansions ? "expansions" : "ms";
}

CurveAxis parse_curve_axis(const std::string &text) {
    if (text == "expansions") return CurveAxis::Expansions;
    if (text == "ms") return CurveAxis::Ms;
    throw std::invalid_argument("unknown curve axis '" + text + "'");
}

AnytimeCurve anytime_curve(const std::vector<RunSummary> &runs,
                           const std::vector<std::uint64_t> &instants, CurveAxis axis,
                           ReferenceKind kind) {
    for (std::size_t i = 1; i < instants.size(); ++i)
        if (instants[i] <= instants[i - 1])
            throw std::invalid_argument("curve instants must be strictly ascending");
    AnytimeCurve curve;
    curve.axis = axis;
    curve.instants = instants;
    std::vector<std::string> variants;
    for (const RunSummary &r : runs)
        variants.push_back(r.variant);
    curve.variants = first_seen(variants);
    curve.scores.assign(curve.variants.size(), std::vector<double>(instants.size(), 0.0));

    std::map<std::string, std::optional<Cost>> references;
    for (const RunSummary &r : runs)
        if (!references.count(r.problem_id()))
            references[r.problem_id()] = reference_cost(runs, r.problem_id(), kind);

    for (const RunSummary &r : runs) {
        std::vector<double> series(instants.size(), 0.0);
        const std::size_t v =
            std::find(curve.variants.begin(), curve.variants.end(), r.variant) -
            curve.variants.begin();
        for (std::size_t i = 0; i < instants.size(); ++i) {
            std::optional<Cost> best;
            for (const EventRow &e : r.events) {
                std::uint64_t at = axis == CurveAxis::Expansions ? e.expansions : e.ms;
                if (at <= instants[i])
                    best = best ? std::min(*best, e.cost) : e.cost;
            }
            series[i] = quality_of(best, references[r.problem_id()]);
            curve.scores[v][i] += series[i];
        }
        curve.run_quality.push_back(std::move(series));
    }

    // A crossover is an instant where the strict leader of a pair changes.
    for (std::size_t a = 0; a < curve.variants.size(); ++a) {
        for (std::size_t b = a + 1; b < curve.variants.size(); ++b) {
            int last_sign = 0;
            for (std::size_t i = 0; i < instants.size(); ++i) {
                double diff = curve.scores[a][i] - curve.scores[b][i];
                int sign = diff > kScoreTolerance ? 1 : (diff < -kScoreTolerance ? -1 : 0);
                if (sign == 0)
                    continue;
                if (last_sign != 0 && sign != last_sign)
                    curve.crossovers.push_back({curve.variants[a], curve.variants[b],
                                                instants[i],
                                                sign > 0 ? curve.variants[a]
                                                         : curve.variants[b]});
                last_sign = sign;
            }
        }
    }
    return curve;
}

std::string curve_csv(const AnytimeCurve &curve) {
    std::string out = csv_line({to_string(curve.axis), "variant", "score"});
    for (std::size_t i = 0; i < curve.instants.size(); ++i)
        for (std::size_t v = 0; v < curve.variants.size(); ++v)
            out += csv_line({std::to_string(curve.instants[i]), curve.variants[v],
                             fixed(curve.scores[v][i])});
    return out;
}

std::string crossovers_csv(const AnytimeCurve &curve) {
    std::string out = csv_line({"variant_a", "variant_b", to_string(curve.axis), "leader"});
    for (const Crossover &c : curve.crossovers)
        out += csv_line({c.variant_a, c.variant_b, std::to_string(c.instant), c.leader});
    return out;
}

std::vector<std::uint64_t> parse_instants(const std::string &text) {
    std::vector<std::uint64_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        long long value = -1;
        try {
            value = std::stoll(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != item.size() || value < 0)
            throw std::invalid_argument("malformed instant '" + item + "'");
        out.push_back(static_cast<std::uint64_t>(value));
    }
    if (out.empty())
        throw std::invalid_argument("no instants given");
    return out;
}

} // namespace surrogate

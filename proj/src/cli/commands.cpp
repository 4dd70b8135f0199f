#include "osearch/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "osearch/errors.hpp"
#include "osearch/measures.hpp"
#include "osearch/oracles.hpp"
#include "osearch/report.hpp"

namespace osearch::cli {

namespace {

constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct UsageError : Error {
    using Error::Error;
};

struct CommonOptions {
    std::optional<std::string> m;
    std::optional<std::string> M;
    bool real = false;
    std::optional<std::uint64_t> seed;
    std::string format = "csv";
    std::uint64_t budget = kDefaultBudget;
};

struct CompareOptions {
    std::string measure;
    std::optional<std::string> p;
    std::optional<std::string> q;
    bool rp2 = false;
    std::optional<std::size_t> n;
};

struct MatrixOptions {
    std::string measures = "all";
    std::optional<std::size_t> n;
};

struct BestOptions {
    std::string measure;
};

struct VerifyOptions {
    std::int64_t max_size = 4;
    std::size_t max_length = 6;
    std::uint64_t real_samples = 200'000;
    std::optional<int> perturb_term;
};

PriceDomain domain_of(const CommonOptions& c) {
    if (!c.m || !c.M) throw UsageError("--m and --M are required");
    const Rational lo = parse_rational(*c.m);
    const Rational hi = parse_rational(*c.M);
    if (c.real) return PriceDomain::real(lo, hi);
    if (!is_integer(lo) || !is_integer(hi)) throw UsageError("integral domains need integer --m/--M (or pass --real)");
    return PriceDomain::integral(to_int64(lo), to_int64(hi));
}

void require_integral_mode(const CommonOptions& c, const char* command) {
    if (c.real) throw UsageError(std::string(command) + " scans integral reservation prices; --real is not supported");
}

EnumerationBudget budget_of(const CommonOptions& c) { return {c.budget, c.budget}; }

report::Metadata metadata_of(const CommonOptions& c, std::string domain) {
    report::Metadata meta;
    meta.domain = std::move(domain);
    meta.mode = c.real ? "real" : "integral";
    meta.budget = std::to_string(c.budget);
    if (c.seed) meta.seed = std::to_string(*c.seed);
    return meta;
}

// Witness values are exact "num/den" strings; detail text shows integers bare.
std::string pretty(const std::string& value) {
    try {
        return to_display(parse_rational(value));
    } catch (const std::exception&) {
        return value;
    }
}

std::string field(const Verdict& v, std::string_view key) { return pretty(v.find(key).value_or("?")); }

std::string detail_of(const Verdict& v) {
    if (v.find("identical")) return "identical algorithms";
    if (v.relation == Relation::Related)
        return "c_u(first,second)=" + to_display(*v.cu_first_over_second) +
               ", c_u(second,first)=" + to_display(*v.cu_second_over_first);
    switch (v.measure) {
    case Measure::Competitive:
        if (v.find("c_first")) return "c=" + field(v, "c_first") + " vs c=" + field(v, "c_second");
        break;
    case Measure::RandomOrder:
        if (v.find("RC_first")) return "RC=" + field(v, "RC_first") + " vs RC=" + field(v, "RC_second");
        break;
    case Measure::Average:
    case Measure::Expected:
        if (v.find("n0")) return "n0=" + field(v, "n0") + ", minimal n=" + field(v, "minimal_n");
        break;
    case Measure::RelativeWorstOrder:
        if (v.find("WR")) return "WR=" + field(v, "WR") + ", c_l=" + field(v, "c_l") + ", c_u=" + field(v, "c_u");
        break;
    case Measure::RelativeInterval:
    case Measure::FiniteRelativeInterval: {
        std::string out = "[" + field(v, "min") + ", " + field(v, "max") + "]";
        if (auto who = v.find("dominates")) out += ", " + *who + " dominates";
        return out;
    }
    case Measure::MinMin:
        if (v.find("ratio_first")) return "ratio " + field(v, "ratio_first") + " vs ratio " + field(v, "ratio_second");
        break;
    case Measure::Bijective:
        if (auto rule = v.find("rule")) {
            std::string out = *rule;
            if (auto empirical = v.find("empirical")) out += "; empirical " + *empirical;
            return out;
        }
        break;
    }
    std::string out;
    for (const auto& w : v.witness) out += (out.empty() ? "" : "; ") + w.key + "=" + pretty(w.value);
    return out;
}

void append_verdict(report::Row& row, const Verdict& v) {
    row.emplace_back("relation", std::string(to_string(v.relation)));
    row.emplace_back("detail", detail_of(v));
    if (v.cu_first_over_second) row.emplace_back("cu_first_over_second", to_string(*v.cu_first_over_second));
    if (v.cu_second_over_first) row.emplace_back("cu_second_over_first", to_string(*v.cu_second_over_first));
    for (const auto& w : v.witness) row.emplace_back("witness." + w.key, w.value);
}

std::string format_decimal(const Rational& value) {
    std::ostringstream out;
    out.precision(10);
    out << to_double(value);
    return out.str();
}

LengthRange length_range(std::optional<std::size_t> n) {
    const std::size_t last = n.value_or(4);
    if (last < 2) throw UsageError("--n must be at least 2");
    return {2, last};
}

report::ReportDocument cmd_compare(const CommonOptions& c, const CompareOptions& o) {
    const Measure measure = parse_measure(o.measure);
    if (c.real && measure == Measure::Bijective && o.n)
        throw UsageError("--n has no meaning for bijective analysis over real prices");
    if (c.real && !c.seed) throw UsageError("--real requires an explicit --seed");
    if (o.q && o.rp2) throw UsageError("--q and --rp2 both select the second algorithm; pass one");
    if (!o.p) throw UsageError("--p is required");

    const PriceDomain d = domain_of(c);
    const AlgorithmSpec first = AlgorithmSpec::reservation(parse_rational(*o.p));
    first.validate_for(d);

    report::ReportDocument doc;
    doc.metadata = metadata_of(c, d.describe());
    report::Row row{{"measure", std::string(to_string(measure))}, {"first", first.label()}};

    if (!o.q && !o.rp2) {
        Rational value;
        switch (measure) {
        case Measure::MinMin: value = minmin_ratio(first, d); break;
        case Measure::Competitive: value = competitive_ratio(first, d); break;
        case Measure::RandomOrder: value = random_order_ratio(first, d); break;
        case Measure::Expected: value = expected_profit(first, d, o.n.value_or(2)); break;
        default:
            throw UsageError("measure " + std::string(to_string(measure)) + " compares two algorithms; pass --q or --rp2");
        }
        doc.columns = {"measure", "first", "value", "decimal", "detail"};
        row.emplace_back("value", to_string(value));
        row.emplace_back("decimal", format_decimal(value));
        row.emplace_back("detail", (measure == Measure::Expected ? "expected " : "ratio ") + to_string(value));
        doc.results.push_back(std::move(row));
        return doc;
    }

    const AlgorithmSpec second =
        o.rp2 ? AlgorithmSpec::reservation_second(first.price()) : AlgorithmSpec::reservation(parse_rational(*o.q));
    second.validate_for(d);
    osearch::CompareOptions options;
    options.n_range = length_range(o.n);
    options.budget = budget_of(c);
    const Verdict v = compare(measure, first, second, d, options);

    doc.columns = {"measure", "first", "second", "relation", "detail"};
    row.emplace_back("second", second.label());
    append_verdict(row, v);
    doc.results.push_back(std::move(row));
    return doc;
}

std::vector<Measure> measure_list(const std::string& text) {
    if (text == "all") return all_measures();
    std::vector<Measure> out;
    std::stringstream in(text);
    std::string name;
    while (std::getline(in, name, ','))
        if (!name.empty()) out.push_back(parse_measure(name));
    if (out.empty()) throw UsageError("--measures is empty");
    return out;
}

report::ReportDocument cmd_matrix(const CommonOptions& c, const MatrixOptions& o) {
    require_integral_mode(c, "matrix");
    const PriceDomain d = domain_of(c);
    const std::vector<Measure> measures = measure_list(o.measures);
    osearch::CompareOptions options;
    options.n_range = length_range(o.n);
    options.budget = budget_of(c);

    report::ReportDocument doc;
    doc.columns = {"measure", "p", "q", "relation", "detail"};
    doc.metadata = metadata_of(c, d.describe());
    for (Measure measure : measures) {
        for (std::int64_t p = d.lo_int(); p <= d.hi_int(); ++p) {
            for (std::int64_t q = p + 1; q <= d.hi_int(); ++q) {
                const Verdict v =
                    compare(measure, AlgorithmSpec::reservation(p), AlgorithmSpec::reservation(q), d, options);
                report::Row row{{"measure", std::string(to_string(measure))},
                                {"p", std::to_string(p)},
                                {"q", std::to_string(q)}};
                append_verdict(row, v);
                doc.results.push_back(std::move(row));
            }
        }
    }
    return doc;
}

report::ReportDocument cmd_best(const CommonOptions& c, const BestOptions& o) {
    require_integral_mode(c, "best");
    const Measure measure = parse_measure(o.measure);
    const PriceDomain d = domain_of(c);
    const BestReservation best = best_reservation(measure, d);

    std::string set = "{";
    for (std::size_t i = 0; i < best.prices.size(); ++i) set += (i ? "," : "") + std::to_string(best.prices[i]);
    set += "}";
    report::ReportDocument doc;
    doc.columns = {"measure", "best", "closed_form", "member"};
    doc.metadata = metadata_of(c, d.describe());
    report::Row row{{"measure", std::string(to_string(measure))}, {"best", set}};
    if (best.closed_form) {
        const bool member =
            std::find(best.prices.begin(), best.prices.end(), *best.closed_form) != best.prices.end();
        row.emplace_back("closed_form", std::to_string(*best.closed_form));
        row.emplace_back("member", member ? "yes" : "no");
    }
    doc.results.push_back(std::move(row));
    return doc;
}

report::ReportDocument cmd_verify(const CommonOptions& c, const VerifyOptions& o, bool& all_match,
                                  std::string& failure) {
    require_integral_mode(c, "verify");
    VerificationGrid grid;
    grid.max_size = o.max_size;
    grid.max_length = o.max_length;
    grid.seed = c.seed;
    grid.real_samples = o.real_samples;
    grid.budget = budget_of(c);
    if (o.perturb_term) {
        if (*o.perturb_term < 0 || *o.perturb_term >= AverageSumTerms::kCount)
            throw UsageError("--perturb-average-term must be in 0.." + std::to_string(AverageSumTerms::kCount - 1));
        grid.average_terms = grid.average_terms.perturbed(*o.perturb_term);
    }
    const VerificationResult result = run_verification(grid);

    report::ReportDocument doc;
    doc.columns = {"quantity", "match", "instances_checked", "instance", "oracle_value", "closed_form_value"};
    doc.metadata = metadata_of(c, "m in {1,2}, N <= " + std::to_string(o.max_size) +
                                      ", n <= " + std::to_string(o.max_length));
    for (const auto& r : result.reports) {
        doc.results.push_back({{"quantity", r.quantity},
                               {"match", r.match ? "yes" : "no"},
                               {"instances_checked", std::to_string(r.instances_checked)},
                               {"instance", r.instance},
                               {"oracle_value", r.oracle_value},
                               {"closed_form_value", r.closed_form_value}});
    }
    all_match = result.all_match();
    if (const OracleReport* bad = result.first_failure())
        failure = bad->quantity + " mismatch at " + bad->instance + ": oracle " + bad->oracle_value +
                  ", closed form " + bad->closed_form_value;
    return doc;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compare reservation price policies for online search under several performance measures",
                 "osearch"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file presetting options (flags override it)");

    CommonOptions common;
    app.add_option("--m", common.m, "Lowest price m");
    app.add_option("--M", common.M, "Highest price M");
    app.add_flag("--real", common.real, "Real-valued prices in [m, M]");
    app.add_option("--seed", common.seed, "Random seed (required with --real)");
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json", "md"}));
    app.add_option("--budget", common.budget, "Largest enumeration allowed")
        ->envname("OSEARCH_BUDGET")
        ->check(CLI::PositiveNumber);

    CompareOptions compare_opts;
    auto* compare_cmd = app.add_subcommand("compare", "Verdict for one pair (or a single ratio)");
    compare_cmd->add_option("--measure", compare_opts.measure, "Measure id")->required();
    compare_cmd->add_option("--p", compare_opts.p, "Reservation price of the first policy");
    compare_cmd->add_option("--q", compare_opts.q, "Reservation price of the second policy");
    compare_cmd->add_flag("--rp2", compare_opts.rp2, "Second policy is R_p^2 with the same p");
    compare_cmd->add_option("--n", compare_opts.n, "Largest sequence length for enumeration-based checks");

    MatrixOptions matrix_opts;
    auto* matrix_cmd = app.add_subcommand("matrix", "Verdicts for every pair p < q");
    matrix_cmd->add_option("--measures", matrix_opts.measures, "Comma-separated measure ids, or all");
    matrix_cmd->add_option("--n", matrix_opts.n, "Largest sequence length for bijective checks");

    BestOptions best_opts;
    auto* best_cmd = app.add_subcommand("best", "Best reservation prices under one measure");
    best_cmd->add_option("--measure", best_opts.measure, "Measure id")->required();

    VerifyOptions verify_opts;
    auto* verify_cmd = app.add_subcommand("verify", "Replay every closed form against its brute-force oracle");
    verify_cmd->add_option("--max-N", verify_opts.max_size, "Largest domain size N");
    verify_cmd->add_option("--max-n", verify_opts.max_length, "Largest sequence length n");
    verify_cmd->add_option("--real-samples", verify_opts.real_samples, "Monte Carlo samples per real check");
    verify_cmd->add_option("--perturb-average-term", verify_opts.perturb_term)->group("");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        const report::Format format = report::parse_format(common.format);
        report::ReportDocument doc;
        bool all_match = true;
        std::string failure;
        if (compare_cmd->parsed()) doc = cmd_compare(common, compare_opts);
        else if (matrix_cmd->parsed()) doc = cmd_matrix(common, matrix_opts);
        else if (best_cmd->parsed()) doc = cmd_best(common, best_opts);
        else doc = cmd_verify(common, verify_opts, all_match, failure);

        CLI::App* sub = app.get_subcommands().front();
        doc.command.name = sub->get_name();
        doc.command.args = args;
        out << report::render(doc, format);
        if (!all_match) {
            err << "verification failed: " << failure << "\n";
            return kMismatch;
        }
        return kOk;
    } catch (const BudgetError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace osearch::cli

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "csv_io.hpp"
#include "triadic/closure.hpp"
#include "triadic/family.hpp"
#include "triadic/models.hpp"
#include "triadic/procedures.hpp"
#include "triadic/risk.hpp"

namespace triadic::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultReplicates = 10000;
constexpr std::size_t kDefaultTrials = 10000;
constexpr std::size_t kDefaultTrialsMaxM = 6;

std::string dump(const Json& j) {
    return j.dump(2) + "\n";
}

Json labels_of(const IndexSet& set, const std::vector<std::size_t>& labels) {
    Json out = Json::array();
    for (std::size_t i : set) {
        out.push_back(labels[i]);
    }
    return out;
}

std::string brace_list(const IndexSet& set, const std::vector<std::size_t>& labels) {
    std::string out = "{";
    for (std::size_t k = 0; k < set.size(); ++k) {
        out += (k ? ", " : "") + std::to_string(labels[set[k]]);
    }
    return out + "}";
}

Json decisions_json(const DecisionVector& d) {
    Json out = Json::array();
    for (Decision x : d) out.push_back(std::string(to_string(x)));
    return out;
}

std::string decisions_text(const DecisionVector& d) {
    std::string out = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        out += (i ? ", " : "") + std::string(to_string(d[i]));
    }
    return out + ")";
}

std::vector<double> broadcast(const std::vector<double>& values, std::size_t m, double fallback, const char* what) {
    if (values.empty()) return std::vector<double>(m, fallback);
    if (values.size() == 1) return std::vector<double>(m, values.front());
    require(values.size() == m, ErrorKind::ConfigError,
            std::string(what) + " needs 1 or " + std::to_string(m) + " values, got " + std::to_string(values.size()));
    return values;
}

} // namespace

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::ConfigError:
            return kExitParse;
        case ErrorKind::InternalInconsistency:
            return kExitInternal;
        default:
            return kExitPrecondition;
    }
}

CommandResult cmd_test(const RunConfig& config, std::istream& input) {
    const PValueTable table = read_pvalue_csv(input);
    const std::size_t m = table.pairs.size();
    const HypothesisFamily family = HypothesisFamily::free_combination(table.pairs);

    const IndexSet bad = family.non_complementary_indices();
    if (!bad.empty() && !config.allow_noncomplementary) {
        std::string rows;
        for (std::size_t i : bad) {
            rows += (rows.empty() ? "" : ", ") + std::string("index ") + std::to_string(table.labels[i]) + " (line "
                    + std::to_string(table.line_numbers[i]) + ")";
        }
        throw Error(ErrorKind::ComplementarityViolation,
                    "p_h + p_k != 1 at " + rows + "; rerun with --allow-noncomplementary to override");
    }
    const ComplementarityPolicy policy =
        config.allow_noncomplementary ? ComplementarityPolicy::Override : ComplementarityPolicy::Require;

    const ThreeWayThresholds thresholds = calibrate(config.calibration, config.alpha, m);
    const DecisionVector decisions = single_step(family, thresholds, policy);
    const PartitionSets sets = partition_from_decisions(decisions);
    const bool complementary = bad.empty();

    CommandResult result;
    std::ostringstream out;
    switch (config.output_format) {
        case OutputFormat::Csv: {
            out << "index,p_h,p_k,decision\n";
            for (std::size_t i = 0; i < m; ++i) {
                out << table.labels[i] << ',' << format_double(table.pairs[i].p_h()) << ','
                    << format_double(table.pairs[i].p_k()) << ',' << to_string(decisions[i]) << '\n';
            }
            break;
        }
        case OutputFormat::Json: {
            Json j;
            j["command"] = "test";
            j["alpha"] = config.alpha;
            j["calibration"] = std::string(to_string(config.calibration));
            j["m"] = m;
            j["thresholds"] = {{"lower", thresholds.lower()}, {"upper", thresholds.upper()}};
            j["complementary"] = complementary;
            j["complementarity_override"] = !complementary;
            j["independence_assumed"] = assumes_independence(config.calibration);
            Json rows = Json::array();
            for (std::size_t i = 0; i < m; ++i) {
                rows.push_back({{"index", table.labels[i]},
                                {"p_h", table.pairs[i].p_h()},
                                {"p_k", table.pairs[i].p_k()},
                                {"decision", std::string(to_string(decisions[i]))}});
            }
            j["decisions"] = rows;
            j["sets"] = {{"u_bar", labels_of(sets.u_bar, table.labels)},
                         {"l", labels_of(sets.l, table.labels)},
                         {"g", labels_of(sets.g, table.labels)},
                         {"u", labels_of(sets.u, table.labels)},
                         {"l_bar", labels_of(sets.l_bar, table.labels)}};
            out << dump(j);
            break;
        }
        case OutputFormat::Table: {
            out << "single-step three-decision test: M = " << m << ", alpha = " << config.alpha
                << ", calibration = " << to_string(config.calibration) << '\n';
            out << "thresholds: lower = " << format_double(thresholds.lower())
                << ", upper = " << format_double(thresholds.upper()) << '\n';
            out << "complementary p-values: " << (complementary ? "yes" : "no (override in effect)") << '\n';
            if (assumes_independence(config.calibration)) {
                out << "note: independent calibration assumes independent p_h\n";
            }
            out << '\n' << std::left << std::setw(8) << "index" << std::setw(26) << "p_h" << std::setw(26) << "p_k"
                << "decision\n";
            for (std::size_t i = 0; i < m; ++i) {
                out << std::setw(8) << table.labels[i] << std::setw(26) << format_double(table.pairs[i].p_h())
                    << std::setw(26) << format_double(table.pairs[i].p_k()) << to_string(decisions[i]) << '\n';
            }
            out << '\n';
            out << "U_bar (h rejected, D2): " << brace_list(sets.u_bar, table.labels) << '\n';
            out << "L     (k rejected, D1): " << brace_list(sets.l, table.labels) << '\n';
            out << "G     (uncertain,  D3): " << brace_list(sets.g, table.labels) << '\n';
            break;
        }
    }
    result.output = out.str();
    return result;
}

CommandResult cmd_simulate(const RunConfig& config) {
    const std::uint64_t seed = effective_seed(config);
    const std::size_t replicates = config.replicates.value_or(kDefaultReplicates);
    const ProcedureSpec procedure{config.procedure, config.calibration, config.alpha};

    Json model_json;
    SimulationModel model = [&]() -> SimulationModel {
        if (config.model == "nested") {
            const double theta = config.theta.empty() ? config.theta1 : config.theta.front();
            require(config.theta.size() <= 1, ErrorKind::ConfigError, "nested model takes a single theta");
            NestedNormalModel nm(theta, config.n, config.theta1, config.theta2);
            model_json = {{"kind", "nested"},
                          {"theta", theta},
                          {"theta1", config.theta1},
                          {"theta2", config.theta2},
                          {"n", config.n}};
            return nm;
        }
        std::size_t m = config.m.value_or(config.theta.size() > 1 ? config.theta.size() : 5);
        require(m >= 1, ErrorKind::ConfigError, "m must be >= 1");
        std::vector<double> theta = broadcast(config.theta, m, 0.0, "theta");
        std::vector<double> boundary = broadcast(config.boundary, m, 0.0, "boundary");
        model_json = {{"kind", "gaussian"}, {"m", m}, {"theta", theta}, {"boundary", boundary}, {"n", config.n}};
        return GaussianMeansModel(std::move(theta), std::move(boundary), config.n);
    }();

    MonteCarloOptions options;
    options.replicates = replicates;
    options.seed = seed;
    options.workers = config.workers;
    const RiskReport r = monte_carlo_risk(model, procedure, config.loss, options);

    const double fwer_limit = config.alpha + 3.0 * r.std_errors.fwer;
    const bool within = r.fwer <= fwer_limit;

    CommandResult result;
    std::ostringstream out;
    switch (config.output_format) {
        case OutputFormat::Json: {
            Json j;
            j["command"] = "simulate";
            j["seed"] = seed;
            j["replicates"] = replicates;
            j["model"] = model_json;
            j["procedure"] = {{"kind", std::string(to_string(procedure.kind))},
                              {"calibration", std::string(to_string(procedure.calibration))},
                              {"alpha", procedure.alpha}};
            j["loss"] = {{"a", config.loss.a},
                         {"b", config.loss.b},
                         {"c", config.loss.c},
                         {"l", config.loss.l},
                         {"identity_mode", r.identity_mode}};
            j["report"] = {{"m", r.m},
                           {"directional_h", r.directional_h},
                           {"directional_k", r.directional_k},
                           {"expected_g", r.expected_g},
                           {"risk", r.risk},
                           {"fwer", r.fwer},
                           {"decomposition_exact", r.decomposition_exact},
                           {"decomposition_residual", r.decomposition_residual},
                           {"independence_assumed", r.independence_assumed}};
            j["std_errors"] = {{"directional_h", r.std_errors.directional_h},
                               {"directional_k", r.std_errors.directional_k},
                               {"expected_g", r.std_errors.expected_g},
                               {"risk", r.std_errors.risk},
                               {"fwer", r.std_errors.fwer}};
            j["fwer_band"] = {{"limit", fwer_limit}, {"within", within}};
            out << dump(j);
            break;
        }
        case OutputFormat::Csv: {
            out << "field,value,std_error\n";
            out << "directional_h," << format_double(r.directional_h) << ','
                << format_double(r.std_errors.directional_h) << '\n';
            out << "directional_k," << format_double(r.directional_k) << ','
                << format_double(r.std_errors.directional_k) << '\n';
            out << "expected_g," << format_double(r.expected_g) << ',' << format_double(r.std_errors.expected_g)
                << '\n';
            out << "risk," << format_double(r.risk) << ',' << format_double(r.std_errors.risk) << '\n';
            out << "fwer," << format_double(r.fwer) << ',' << format_double(r.std_errors.fwer) << '\n';
            break;
        }
        case OutputFormat::Table: {
            out << "Monte Carlo risk: model = " << model_json["kind"].get<std::string>() << ", M = " << r.m
                << ", procedure = " << to_string(procedure.kind) << " (" << to_string(procedure.calibration)
                << "), alpha = " << procedure.alpha << '\n';
            out << "replicates = " << replicates << ", seed = " << seed << '\n';
            out << "loss (a, b, c, l) = (" << config.loss.a << ", " << config.loss.b << ", " << config.loss.c << ", "
                << config.loss.l << ")" << (r.identity_mode ? "  [identity mode]" : "") << "\n\n";
            auto line = [&](const char* name, double v, double se) {
                out << std::left << std::setw(16) << name << std::setw(24) << format_double(v) << "+- "
                    << format_double(se) << '\n';
            };
            line("directional_h", r.directional_h, r.std_errors.directional_h);
            line("directional_k", r.directional_k, r.std_errors.directional_k);
            line("expected_g", r.expected_g, r.std_errors.expected_g);
            line("risk", r.risk, r.std_errors.risk);
            line("fwer", r.fwer, r.std_errors.fwer);
            out << "\nFWER <= alpha + 3 SE (" << format_double(fwer_limit) << "): " << (within ? "yes" : "NO") << '\n';
            if (r.identity_mode) {
                out << "risk decomposition exact on every replicate: " << (r.decomposition_exact ? "yes" : "NO")
                    << '\n';
            }
            if (r.independence_assumed) {
                out << "note: independent calibration assumes independent p_h\n";
            }
            break;
        }
    }
    result.output = out.str();
    return result;
}

CommandResult cmd_closure_check(const RunConfig& config) {
    const std::size_t m = config.m.value_or(4);
    require(config.trials.has_value() || m <= kDefaultTrialsMaxM, ErrorKind::SizeLimitExceeded,
            "m > " + std::to_string(kDefaultTrialsMaxM) + " needs an explicit --trials");
    const std::size_t trials = config.trials.value_or(kDefaultTrials);
    const std::uint64_t seed = effective_seed(config);
    const LocalTestRule rule = LocalTestRule::from_calibration(config.calibration, config.alpha);

    HypothesisFamily family = [&] {
        std::vector<PValuePair> pairs(m, PValuePair::from_h(0.5));
        if (config.nested) {
            std::vector<double> thresholds(m);
            for (std::size_t i = 0; i < m; ++i) thresholds[i] = static_cast<double>(i);
            return HypothesisFamily::structured(std::move(pairs), threshold_oracle(std::move(thresholds)));
        }
        return HypothesisFamily::free_combination(std::move(pairs));
    }();

    const EquivalenceReport report = verify_theorem_equivalence(family, rule, trials, seed);

    CommandResult result;
    result.exit_code = report.mismatches == 0 ? kExitSuccess : kExitInternal;
    std::ostringstream out;
    if (config.output_format == OutputFormat::Json) {
        Json j;
        j["command"] = "closure-check";
        j["m"] = m;
        j["alpha"] = config.alpha;
        j["schedule"] = std::string(to_string(config.calibration));
        j["seed"] = seed;
        j["trials"] = report.trials;
        j["single_step_level"] = report.single_step_level;
        j["mismatches"] = report.mismatches;
        j["resampled"] = report.resampled;
        if (report.first_mismatch) {
            j["first_mismatch"] = {{"trial", report.first_mismatch->trial},
                                   {"p_h", report.first_mismatch->p_h},
                                   {"closure", decisions_json(report.first_mismatch->closure)},
                                   {"single_step", decisions_json(report.first_mismatch->single_step)}};
        } else {
            j["first_mismatch"] = nullptr;
        }
        out << dump(j);
    } else if (config.output_format == OutputFormat::Csv) {
        out << "m,alpha,schedule,trials,mismatches,single_step_level\n"
            << m << ',' << format_double(config.alpha) << ',' << to_string(config.calibration) << ',' << report.trials
            << ',' << report.mismatches << ',' << format_double(report.single_step_level) << '\n';
    } else {
        out << "closure vs single-step: M = " << m << ", alpha = " << config.alpha
            << ", schedule = " << to_string(config.calibration) << ", seed = " << seed << '\n';
        out << "single-step thresholds: (" << format_double(report.single_step_level) << ", "
            << format_double(1.0 - report.single_step_level) << ")\n";
        out << "trials = " << report.trials << ", mismatches = " << report.mismatches
            << ", resampled near-threshold draws = " << report.resampled << '\n';
        if (report.first_mismatch) {
            out << "first mismatch at trial " << report.first_mismatch->trial << ": closure "
                << decisions_text(report.first_mismatch->closure) << " vs single-step "
                << decisions_text(report.first_mismatch->single_step) << '\n';
        }
        out << (report.mismatches == 0 ? "equivalent\n" : "NOT equivalent\n");
    }
    result.output = out.str();
    if (report.mismatches != 0) {
        result.error = "closure and single-step decisions differ in " + std::to_string(report.mismatches) + " trials";
    }
    return result;
}

CommandResult cmd_counterexample(const RunConfig& config) {
    require(config.theta1 < config.theta2, ErrorKind::InvalidOrdering, "counterexample needs theta1 < theta2");
    const double root_n = std::sqrt(config.n);
    const double lo = config.grid_min.value_or(config.theta1 - 5.0 / root_n);
    const double hi = config.grid_max.value_or(config.theta2 + 5.0 / root_n);
    require(lo <= hi, ErrorKind::ConfigError, "grid-min must not exceed grid-max");
    const auto steps = static_cast<std::size_t>(std::floor((hi - lo) / config.grid_step + 1e-9));
    require(steps < 10'000'000, ErrorKind::ConfigError, "grid too fine");
    std::vector<double> grid;
    grid.reserve(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        grid.push_back(lo + static_cast<double>(k) * config.grid_step);
    }

    const CounterexampleComparison cmp =
        counterexample_vs_bonferroni(grid, config.n, config.theta1, config.theta2, config.alpha);
    std::size_t disagreeing = 0;
    for (const ComparisonRow& row : cmp.rows) disagreeing += row.agree() ? 0 : 1;

    auto interval_text = [](double a, double b, bool a_closed, bool b_closed) {
        return std::string(a_closed ? "[" : "(") + format_double(a) + ", " + format_double(b) + (b_closed ? "]" : ")");
    };

    CommandResult result;
    std::ostringstream out;
    switch (config.output_format) {
        case OutputFormat::Csv: {
            out << "xbar,z1,z2,closure_1,closure_2,bonferroni_1,bonferroni_2,agree\n";
            for (const ComparisonRow& row : cmp.rows) {
                out << format_double(row.xbar) << ',' << format_double(root_n * (row.xbar - config.theta1)) << ','
                    << format_double(root_n * (row.xbar - config.theta2)) << ',' << to_string(row.closure[0]) << ','
                    << to_string(row.closure[1]) << ',' << to_string(row.bonferroni[0]) << ','
                    << to_string(row.bonferroni[1]) << ',' << (row.agree() ? "true" : "false") << '\n';
            }
            break;
        }
        case OutputFormat::Json: {
            Json j;
            j["command"] = "counterexample";
            j["alpha"] = config.alpha;
            j["theta1"] = config.theta1;
            j["theta2"] = config.theta2;
            j["n"] = config.n;
            j["closure_thresholds"] = {{"reject_h1", cmp.thresholds.reject_h1},
                                       {"reject_k1", cmp.thresholds.reject_k1},
                                       {"reject_h2", cmp.thresholds.reject_h2},
                                       {"reject_k2", cmp.thresholds.reject_k2}};
            j["bonferroni_critical_value"] = cmp.thresholds.reject_k2;
            Json analytic = Json::array();
            for (const DisagreementInterval& d : cmp.analytic_intervals) {
                analytic.push_back({{"index", d.index + 1},
                                    {"z_lo", d.z_lo},
                                    {"z_hi", d.z_hi},
                                    {"lo_closed", d.lo_closed},
                                    {"hi_closed", d.hi_closed},
                                    {"xbar_lo", d.xbar_lo},
                                    {"xbar_hi", d.xbar_hi}});
            }
            j["analytic_intervals"] = analytic;
            Json grid_runs = Json::array();
            for (const auto& [a, b] : cmp.grid_intervals) grid_runs.push_back({a, b});
            j["grid_intervals"] = grid_runs;
            j["grid_points"] = cmp.rows.size();
            j["disagreeing_points"] = disagreeing;
            out << dump(j);
            break;
        }
        case OutputFormat::Table: {
            const auto& t = cmp.thresholds;
            out << "nested one-sided normal pair h_i: theta >= theta_i, theta1 = " << config.theta1
                << ", theta2 = " << config.theta2 << ", n = " << config.n << ", alpha = " << config.alpha << "\n\n";
            out << "closure procedure (standardized z_i = sqrt(n)(xbar - theta_i)):\n";
            out << "  reject h1 if z1 < " << format_double(t.reject_h1) << '\n';
            out << "  reject k1 if z1 > " << format_double(t.reject_k1) << '\n';
            out << "  reject h2 if z2 < " << format_double(t.reject_h2) << '\n';
            out << "  reject k2 if z2 > " << format_double(t.reject_k2) << '\n';
            out << "Bonferroni procedure: every test at |z| > " << format_double(t.reject_k2) << "\n\n";
            out << "disagreement (from critical values):\n";
            if (cmp.analytic_intervals.empty()) out << "  none\n";
            for (const DisagreementInterval& d : cmp.analytic_intervals) {
                out << "  index " << d.index + 1 << ": z" << d.index + 1 << " in "
                    << interval_text(d.z_lo, d.z_hi, d.lo_closed, d.hi_closed) << ", xbar in "
                    << interval_text(d.xbar_lo, d.xbar_hi, d.lo_closed, d.hi_closed) << '\n';
            }
            out << "disagreement on the grid (" << disagreeing << " of " << cmp.rows.size() << " points):\n";
            if (cmp.grid_intervals.empty()) out << "  none\n";
            for (const auto& [a, b] : cmp.grid_intervals) {
                out << "  xbar in [" << format_double(a) << ", " << format_double(b) << "]\n";
            }
            out << "\ntransitions:\n" << std::left << std::setw(26) << "  xbar" << std::setw(12) << "closure"
                << "bonferroni\n";
            const ComparisonRow* prev = nullptr;
            for (const ComparisonRow& row : cmp.rows) {
                if (!prev || prev->closure != row.closure || prev->bonferroni != row.bonferroni) {
                    out << "  " << std::setw(24) << format_double(row.xbar) << std::setw(12)
                        << (std::string(to_string(row.closure[0])) + " " + std::string(to_string(row.closure[1])))
                        << to_string(row.bonferroni[0]) << ' ' << to_string(row.bonferroni[1]) << '\n';
                }
                prev = &row;
            }
            break;
        }
    }
    result.output = out.str();
    return result;
}

CommandResult cmd_graph(const RunConfig& config, std::istream& input) {
    const DataTable table = read_data_csv(input);
    const std::size_t p = table.names.size();

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<double> correlations;
    std::vector<PValuePair> pairs;
    DecisionVector decisions;
    std::optional<ThreeWayThresholds> thresholds;
    if (p >= 2) {
        EdgeFamily ef = correlation_edge_pvalues(table.data, config.rho0);
        thresholds = calibrate(config.calibration, config.alpha, ef.family.size());
        decisions = single_step(ef.family, *thresholds);
        pairs.assign(ef.family.pairs().begin(), ef.family.pairs().end());
        edges = std::move(ef.edges);
        correlations = std::move(ef.correlations);
    }

    std::vector<std::size_t> by_kind[3];
    for (std::size_t e = 0; e < decisions.size(); ++e) {
        by_kind[decisions[e] == Decision::D2 ? 0 : (decisions[e] == Decision::D1 ? 1 : 2)].push_back(e);
    }

    CommandResult result;
    std::ostringstream out;
    switch (config.output_format) {
        case OutputFormat::Csv: {
            out << "i,j,name_i,name_j,r,p_h,p_k,decision\n";
            for (std::size_t e = 0; e < edges.size(); ++e) {
                out << edges[e].first + 1 << ',' << edges[e].second + 1 << ',' << table.names[edges[e].first] << ','
                    << table.names[edges[e].second] << ',' << format_double(correlations[e]) << ','
                    << format_double(pairs[e].p_h()) << ',' << format_double(pairs[e].p_k()) << ','
                    << to_string(decisions[e]) << '\n';
            }
            break;
        }
        case OutputFormat::Json: {
            auto edge_list = [&](const std::vector<std::size_t>& ids) {
                Json arr = Json::array();
                for (std::size_t e : ids) {
                    arr.push_back({{"i", edges[e].first + 1},
                                   {"j", edges[e].second + 1},
                                   {"name_i", table.names[edges[e].first]},
                                   {"name_j", table.names[edges[e].second]},
                                   {"r", correlations[e]},
                                   {"p_h", pairs[e].p_h()},
                                   {"decision", std::string(to_string(decisions[e]))}});
                }
                return arr;
            };
            Json j;
            j["command"] = "graph";
            j["alpha"] = config.alpha;
            j["calibration"] = std::string(to_string(config.calibration));
            j["rho0"] = config.rho0;
            j["n_observations"] = table.data.rows();
            j["n_variables"] = p;
            j["m"] = edges.size();
            if (thresholds) {
                j["thresholds"] = {{"lower", thresholds->lower()}, {"upper", thresholds->upper()}};
            } else {
                j["thresholds"] = nullptr;
            }
            j["structure"] = "free-combination (declared, not verified)";
            j["counts"] = {{"significant_edges", by_kind[0].size()},
                           {"significant_non_edges", by_kind[1].size()},
                           {"uncertain", by_kind[2].size()}};
            j["significant_edges"] = edge_list(by_kind[0]);
            j["significant_non_edges"] = edge_list(by_kind[1]);
            j["uncertain"] = edge_list(by_kind[2]);
            out << dump(j);
            break;
        }
        case OutputFormat::Table: {
            out << "threshold graph: P = " << p << " variables, N = " << table.data.rows()
                << " observations, M = " << edges.size() << " edges, rho0 = " << config.rho0
                << ", alpha = " << config.alpha << " (" << to_string(config.calibration) << ")\n";
            out << "edge structure declared free combination (not verified)\n";
            const char* titles[3] = {"significant edges (rho > rho0, D2)", "significant non-edges (rho <= rho0, D1)",
                                     "uncertain (D3)"};
            for (int k = 0; k < 3; ++k) {
                out << '\n' << titles[k] << ": " << by_kind[k].size() << '\n';
                for (std::size_t e : by_kind[k]) {
                    out << "  " << table.names[edges[e].first] << " -- " << table.names[edges[e].second]
                        << "  r = " << format_double(correlations[e]) << "  p_h = " << format_double(pairs[e].p_h())
                        << '\n';
                }
            }
            break;
        }
    }
    result.output = out.str();
    return result;
}

CommandResult run_command(const RunConfig& config) {
    try {
        config.validate();
        auto with_input = [&](auto&& fn) {
            require(config.input_path.has_value(), ErrorKind::ConfigError,
                    std::string(to_string(config.command)) + " needs --input");
            if (*config.input_path == "-") {
                return fn(std::cin);
            }
            std::ifstream in(*config.input_path);
            require(in.good(), ErrorKind::ParseError, "cannot open input file " + *config.input_path);
            return fn(in);
        };
        switch (config.command) {
            case Command::Test:
                return with_input([&](std::istream& in) { return cmd_test(config, in); });
            case Command::Simulate:
                return cmd_simulate(config);
            case Command::ClosureCheck:
                return cmd_closure_check(config);
            case Command::Counterexample:
                return cmd_counterexample(config);
            case Command::Graph:
                return with_input([&](std::istream& in) { return cmd_graph(config, in); });
        }
    } catch (const Error& e) {
        return CommandResult{exit_code_for(e.kind()), "", std::string(to_string(e.kind())) + ": " + e.what()};
    }
    return CommandResult{kExitInternal, "", "unknown command"};
}

} // namespace triadic::cli

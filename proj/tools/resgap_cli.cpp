// resgap command line front end: bound / minimize / optimize / oracle /
// zeros.  Machine-readable output (json or csv) goes to stdout, diagnostics
// to stderr.  Exit codes: 0 certified or successful, 1 negative or not
// found, 2 numerical failure, 64 usage error.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "resgap/arith.hpp"
#include "resgap/bound.hpp"
#include "resgap/errors.hpp"
#include "resgap/optimize.hpp"
#include "resgap/oracle.hpp"
#include "resgap/zeros.hpp"

using json = nlohmann::ordered_json;
using namespace resgap;

namespace {

constexpr int kExitCertified = 0;
constexpr int kExitNegative = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUsage = 64;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// one flat record; serialized as json object, csv (header + one row) or
// human-readable key: value lines
struct Record {
    std::vector<std::pair<std::string, std::string>> fields;
    void add(const std::string& key, double v) { fields.emplace_back(key, fmt(v)); }
    void add(const std::string& key, const std::string& v) {
        fields.emplace_back(key, v);
    }
    void add(const std::string& key, std::int64_t v) {
        fields.emplace_back(key, std::to_string(v));
    }
};

void emit(const std::vector<Record>& records, const std::string& format) {
    if (records.empty()) return;
    if (format == "json") {
        json doc;
        json rows = json::array();
        for (const auto& r : records) {
            json row;
            for (const auto& [k, v] : r.fields) row[k] = v;
            rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
        std::printf("%s\n", doc.dump(2).c_str());
    } else if (format == "csv") {
        for (std::size_t i = 0; i < records[0].fields.size(); ++i) {
            std::printf("%s%s", i ? "," : "", records[0].fields[i].first.c_str());
        }
        std::printf("\n");
        for (const auto& r : records) {
            for (std::size_t i = 0; i < r.fields.size(); ++i) {
                const std::string& v = r.fields[i].second;
                if (v.find(',') != std::string::npos) {
                    std::printf("%s\"%s\"", i ? "," : "", v.c_str());
                } else {
                    std::printf("%s%s", i ? "," : "", v.c_str());
                }
            }
            std::printf("\n");
        }
    } else {
        for (const auto& r : records) {
            for (const auto& [k, v] : r.fields) {
                std::printf("%s: %s\n", k.c_str(), v.c_str());
            }
        }
    }
}

void echo_input(Record& rec, const char* subcommand, double phi, double ell,
                const std::vector<double>& coeffs) {
    rec.add("subcommand", std::string(subcommand));
    if (phi >= 0.0) rec.add("phi", phi);
    rec.add("ell", ell);
    std::string cs;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        cs += (i ? "," : "") + fmt(coeffs[i]);
    }
    rec.add("coeffs", cs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resonance-correlation gap bound toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_config("--config")->description(
        "flat key=value configuration file (flags take precedence)");

    // every option lives on the root app so flat config keys resolve; the
    // subcommands are pure verbs and fallthrough routes their flags here
    std::string format = "human";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "human"}))
        ->capture_default_str();
    int threads = 1;
    app.add_option("--threads", threads, "worker thread count")
        ->envname("RESGAP_THREADS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    double phi = 0.508949;
    double ell = 1.15;
    std::vector<double> coeffs{1.0, -0.7};
    double tol = 1e-9;
    app.add_option("--phi", phi, "window exponent phi")->capture_default_str();
    app.add_option("--ell", ell, "resonator exponent ell")
        ->capture_default_str();
    app.add_option("--coeffs", coeffs,
                   "weight polynomial coefficients c0,c1,...")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--tol", tol, "absolute quadrature tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::pair<double, double> phi_range{0.45, 0.55};
    double phi_step = 5e-3, tol_phi = 1e-6, quad_tol = 1e-8;
    app.add_option("--range", phi_range, "phi scan range lo:hi (minimize)")
        ->delimiter(':')
        ->capture_default_str();
    app.add_option("--step", phi_step, "coarse scan step (minimize)")
        ->capture_default_str();
    app.add_option("--tol-phi", tol_phi, "bisection width target")
        ->capture_default_str();
    app.add_option("--quad-tol", quad_tol, "quadrature tolerance for scans")
        ->capture_default_str();

    SearchSpec spec;
    std::pair<double, double> ell_range{1.0, 2.0}, coeff_range{-2.0, 2.0},
        opt_phi_range{0.45, 0.55};
    bool trace = false;
    app.add_option("--degree", spec.degree, "polynomial degree (optimize)")
        ->capture_default_str();
    app.add_option("--budget", spec.budget,
                   "objective evaluation budget (optimize)")
        ->capture_default_str();
    app.add_option("--seed", spec.seed, "random start seed (optimize)")
        ->capture_default_str();
    app.add_option("--multi-starts", spec.multi_starts,
                   "number of seeded extra starts (optimize)")
        ->capture_default_str();
    app.add_option("--ell-range", ell_range, "ell box lo:hi (optimize)")
        ->delimiter(':')
        ->capture_default_str();
    app.add_option("--coeff-range", coeff_range,
                   "coefficient box lo:hi (optimize)")
        ->delimiter(':')
        ->capture_default_str();
    app.add_option("--phi-range", opt_phi_range,
                   "phi scan range lo:hi (optimize)")
        ->delimiter(':')
        ->capture_default_str();
    app.add_option("--phi-step", spec.phi_step, "coarse scan step (optimize)")
        ->capture_default_str();
    app.add_flag("--trace", trace, "emit every evaluated candidate (optimize)");

    std::vector<std::uint32_t> lengths{1000};
    app.add_option("--L", lengths, "resonator lengths (oracle, repeatable)")
        ->delimiter(',')
        ->capture_default_str();

    std::string zero_file;
    std::pair<double, double> window{0.0, 0.0};
    double bin_width = 0.05;
    app.add_option("--file", zero_file, "ordinate table path (zeros)");
    app.add_option("--window", window,
                   "analysis window lo:hi, default whole table (zeros)")
        ->delimiter(':');
    app.add_option("--bin-width", bin_width, "histogram bin width (zeros)")
        ->capture_default_str();

    auto* bound = app.add_subcommand("bound", "evaluate the gap functional");
    auto* minimize =
        app.add_subcommand("minimize", "find the positivity crossing in phi");
    auto* optimize =
        app.add_subcommand("optimize", "search weight polynomials");
    auto* oracle = app.add_subcommand(
        "oracle", "finite Dirichlet sums against the integral prediction");
    auto* zeros = app.add_subcommand("zeros", "empirical zero-table analysis");
    auto* stats = zeros->add_subcommand("stats", "gap statistics over a window");
    zeros->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*bound) {
            auto r = gap_lower_bound({phi, ell, WeightPolynomial(coeffs)}, tol);
            Record rec;
            echo_input(rec, "bound", phi, ell, coeffs);
            rec.add("tol", tol);
            rec.add("i_f", r.i_f);
            rec.add("term1", r.term1);
            rec.add("term2", r.term2);
            rec.add("term3", r.term3);
            rec.add("m_total", r.m_total);
            rec.add("g_value", r.g_value);
            rec.add("quad_error", r.quad_error);
            rec.add("evaluations", r.evaluations);
            rec.add("certified", std::string(certified_positive(r) ? "yes" : "no"));
            emit({rec}, format);
            return certified_positive(r) ? kExitCertified : kExitNegative;
        }
        if (*minimize) {
            auto r = minimize_phi(ell, WeightPolynomial(coeffs),
                                  phi_range.first, phi_range.second, phi_step,
                                  tol_phi, quad_tol, threads);
            Record rec;
            echo_input(rec, "minimize", -1.0, ell, coeffs);
            rec.add("range_lo", phi_range.first);
            rec.add("range_hi", phi_range.second);
            rec.add("step", phi_step);
            rec.add("tol_phi", tol_phi);
            rec.add("quad_tol", quad_tol);
            rec.add("found", std::string(r.found ? "yes" : "no"));
            if (r.found) {
                rec.add("phi_star", r.phi_star);
                rec.add("bracket_lo", r.bracket_lo);
                rec.add("bracket_hi", r.bracket_hi);
            }
            rec.add("g_evaluations", r.g_evaluations);
            emit({rec}, format);
            return r.found ? kExitCertified : kExitNegative;
        }
        if (*optimize) {
            spec.ell_range = {ell_range.first, ell_range.second};
            spec.coeff_range = {coeff_range.first, coeff_range.second};
            spec.phi_lo = opt_phi_range.first;
            spec.phi_hi = opt_phi_range.second;
            spec.tol_phi = tol_phi;
            spec.quad_tol = quad_tol;
            auto rep = optimize_weights(spec);
            std::vector<Record> out;
            Record rec;
            rec.add("subcommand", std::string("optimize"));
            rec.add("degree", static_cast<std::int64_t>(spec.degree));
            rec.add("budget", spec.budget);
            rec.add("seed", static_cast<std::int64_t>(spec.seed));
            rec.add("any_success", std::string(rep.any_success ? "yes" : "no"));
            if (rep.any_success) {
                rec.add("best_phi_star", rep.best_phi_star);
                rec.add("best_ell", rep.best_params.ell);
                std::string cs;
                for (std::size_t i = 0; i < rep.best_params.f.coeffs.size(); ++i) {
                    cs += (i ? "," : "") + fmt(rep.best_params.f.coeffs[i]);
                }
                rec.add("best_coeffs", cs);
            }
            rec.add("evaluated", static_cast<std::int64_t>(rep.trace.size()));
            out.push_back(rec);
            if (trace) {
                for (const auto& e : rep.trace) {
                    Record t;
                    t.add("subcommand", std::string("optimize-trace"));
                    t.add("iteration", e.iteration);
                    std::string cs;
                    for (std::size_t i = 0; i < e.candidate.size(); ++i) {
                        cs += (i ? "," : "") + fmt(e.candidate[i]);
                    }
                    t.add("candidate", cs);
                    t.add("success", std::string(e.success ? "yes" : "no"));
                    t.add("phi_star", e.phi_star);
                    out.push_back(t);
                }
            }
            emit(out, format);
            return rep.any_success ? kExitCertified : kExitNegative;
        }
        if (*oracle) {
            std::uint32_t max_l = 0;
            for (auto L : lengths) max_l = std::max(max_l, L);
            auto tables = ArithTables::build(max_l);
            std::vector<OracleInstance> insts;
            for (auto L : lengths) {
                insts.push_back(OracleInstance::from_phi(
                    L, phi, ell, WeightPolynomial(coeffs)));
            }
            auto rep = convergence_study(insts, tables, tol);
            std::vector<Record> out;
            for (const auto& row : rep.rows) {
                Record rec;
                echo_input(rec, "oracle", phi, ell, coeffs);
                rec.add("L", static_cast<std::int64_t>(row.L));
                rec.add("h", row.h);
                rec.add("ratio", row.ratio);
                rec.add("prediction", row.prediction);
                rec.add("discrepancy", row.discrepancy);
                rec.add("rel_discrepancy", row.rel_discrepancy);
                rec.add("band_lo", row.band_lo);
                rec.add("band_hi", row.band_hi);
                out.push_back(rec);
            }
            emit(out, format);
            return kExitCertified;
        }
        if (*stats) {
            if (zero_file.empty()) {
                std::fprintf(stderr, "usage error: zeros stats needs --file\n");
                return kExitUsage;
            }
            auto zt = ZeroTable::parse_file(zero_file);
            if (window.first == 0.0 && window.second == 0.0) {
                window = {zt.ordinates.front(), zt.ordinates.back()};
            }
            auto st = gap_stats(zt, window.first, window.second, phi, bin_width);
            Record rec;
            rec.add("subcommand", std::string("zeros-stats"));
            rec.add("file", zero_file);
            rec.add("t_lo", st.t_lo);
            rec.add("t_hi", st.t_hi);
            rec.add("phi", st.phi);
            rec.add("gap_count", static_cast<std::int64_t>(st.gap_count));
            rec.add("min_normalized_gap", st.min_normalized_gap);
            rec.add("argmin_index", static_cast<std::int64_t>(st.argmin_index));
            rec.add("mean_normalized_gap", st.mean_normalized_gap);
            rec.add("sup_nh2_minus_nh", st.sup_nh2_minus_nh);
            rec.add("bin_width", st.bin_width);
            std::string hist;
            for (std::size_t i = 0; i < st.histogram.size(); ++i) {
                hist += (i ? ";" : "") + std::to_string(st.histogram[i]);
            }
            rec.add("histogram", hist);
            emit({rec}, format);
            return kExitCertified;
        }
    } catch (const PreconditionError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitUsage;
}

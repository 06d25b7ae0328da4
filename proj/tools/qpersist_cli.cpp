// Command-line front end: persistence tables, cross-method comparison,
// decay exponents, zigzag data, and generating-function coefficients,
// emitted as CSV or JSON.
//
// Fraction-shaped inputs ("1/2", "-3") run on the exact rational backend and
// are printed back as exact fractions; decimal inputs, the spectral method,
// and the mc/quad oracles run on floating backends at --precision bits.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpersist.hpp"

using json = nlohmann::ordered_json;
using namespace qpersist;

namespace {

struct Options {
    std::string command;
    std::string theta, xi;
    unsigned n_max = 10;
    unsigned order = 10;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    unsigned precision = 128;
    double tol = 1e-8;
    std::string format = "csv";
    std::string out;
    std::string method = "all";
    bool q_flag = false;
    bool empirical = false;
};

bool is_rational_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    bool slash = false, digits_before = false, digits_after = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '/') {
            if (slash || !digits_before) return false;
            slash = true;
        } else if (c >= '0' && c <= '9') {
            (slash ? digits_after : digits_before) = true;
        } else {
            return false;
        }
    }
    return digits_before && (!slash || digits_after);
}

std::string fmt_value(const Rational& v) { return v.str(); }

std::string fmt_value(const Real& v) {
    unsigned d10 = static_cast<unsigned>(working_precision_bits<Real>() * 0.30103) + 3;
    return v.str(d10);
}

std::string fmt_value(double v) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

struct Row {
    std::string n;
    std::string method;
    std::string value;
    std::string error_bound;
    std::string discrepancy;   // only set under --method all
};

std::string csv_cell(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    return q + "\"";
}

json config_json(const Options& o, const std::string& backend) {
    json c;
    c["command"] = o.command;
    if (!o.theta.empty()) c["theta"] = o.theta;
    if (!o.xi.empty()) c["xi"] = o.xi;
    c["n_max"] = o.n_max;
    c["order"] = o.order;
    c["trials"] = o.trials;
    c["seed"] = o.seed;
    c["precision_bits"] = o.precision;
    c["tol"] = fmt_value(o.tol);
    c["format"] = o.format;
    c["method"] = o.method;
    c["backend"] = backend;
    return c;
}

void emit_rows(const Options& o, std::ostream& os, const std::string& backend,
               const std::vector<Row>& rows, bool with_discrepancy) {
    if (o.format == "json") {
        json doc;
        doc["schema"] = 1;
        doc["config"] = config_json(o, backend);
        json arr = json::array();
        for (const Row& r : rows) {
            json jr;
            jr["n"] = std::stoul(r.n);
            jr["method"] = r.method;
            jr["value"] = r.value;
            jr["error_bound"] = r.error_bound;
            if (with_discrepancy) jr["max_discrepancy"] = r.discrepancy;
            arr.push_back(jr);
        }
        doc["rows"] = arr;
        os << doc.dump(2) << "\n";
    } else {
        os << "n,method,value,error_bound";
        if (with_discrepancy) os << ",max_discrepancy";
        os << "\n";
        for (const Row& r : rows) {
            os << r.n << "," << r.method << "," << csv_cell(r.value) << ","
               << csv_cell(r.error_bound);
            if (with_discrepancy) os << "," << csv_cell(r.discrepancy);
            os << "\n";
        }
    }
}

Method parse_method(const std::string& name) {
    if (name == "closed") return Method::closed;
    if (name == "recursion") return Method::recursion;
    if (name == "gf") return Method::gf;
    if (name == "composition") return Method::composition;
    if (name == "spectral") return Method::spectral;
    if (name == "mc") return Method::mc;
    if (name == "quad") return Method::quad;
    throw std::invalid_argument("unknown method: " + name);
}

template <class T>
T parse_scalar(const std::string& s);

template <>
Rational parse_scalar<Rational>(const std::string& s) { return Rational(s); }

template <>
Real parse_scalar<Real>(const std::string& s) {
    if (is_rational_literal(s)) return to_real(Rational(s));
    return Real(s);
}

template <>
double parse_scalar<double>(const std::string& s) {
    if (is_rational_literal(s)) return to_double(Rational(s));
    return std::stod(s);
}

// mc/quad table rows (always double)
std::vector<Row> oracle_rows(const Options& o, Method m) {
    ModelParams<double> params(parse_scalar<double>(o.theta), parse_scalar<double>(o.xi));
    std::vector<Row> rows;
    if (m == Method::mc) {
        SurvivalEstimate est = mc_persistence(params, o.n_max, o.trials, o.seed);
        for (unsigned n = 1; n <= o.n_max; ++n)
            rows.push_back({std::to_string(n), "mc", fmt_value(est.p_hat[n - 1]),
                            fmt_value(est.se[n - 1]), ""});
    } else {
        for (unsigned n = 1; n <= o.n_max; ++n) {
            auto r = p_quad(params, n, o.tol);
            rows.push_back({std::to_string(n), "quad", fmt_value(r.value),
                            fmt_value(r.error_bound), ""});
        }
    }
    return rows;
}

template <class T>
int run_table(const Options& o, std::ostream& os, const std::string& backend) {
    ModelParams<T> params(parse_scalar<T>(o.theta), parse_scalar<T>(o.xi));
    const bool all = o.method == "all";
    std::vector<Method> methods =
        all ? applicable_methods(params) : std::vector<Method>{parse_method(o.method)};

    std::vector<std::vector<PersistenceResult<T>>> runs;
    for (Method m : methods) runs.push_back(p_by_method(params, m, o.n_max, T(o.tol)));

    double worst = 0.0;
    std::vector<Row> rows;
    for (unsigned n = 1; n <= o.n_max; ++n) {
        T dmax(0);
        for (std::size_t i = 0; i < runs.size(); ++i)
            for (std::size_t j = i + 1; j < runs.size(); ++j) {
                T d = abs_val(runs[i][n - 1].value - runs[j][n - 1].value);
                if (d > dmax) dmax = d;
            }
        worst = std::max(worst, to_double(dmax));
        for (std::size_t i = 0; i < runs.size(); ++i) {
            const auto& r = runs[i][n - 1];
            rows.push_back({std::to_string(n), method_name(r.method), fmt_value(r.value),
                            fmt_value(r.error_bound), all ? fmt_value(dmax) : std::string()});
        }
    }
    emit_rows(o, os, backend, rows, all);
    return (all && worst > o.tol) ? 3 : 0;
}

template <class T>
void run_exponent(const Options& o, std::ostream& os, const std::string& backend) {
    ModelParams<T> params(parse_scalar<T>(o.theta), parse_scalar<T>(o.xi));
    if (!(params.xi > 0 && params.xi < 1))
        throw std::domain_error("exponent: requires xi in (0,1)");
    T analytic = persistence_exponent(params);
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("analytic", fmt_value(analytic));
    if (o.empirical) {
        std::vector<PersistenceResult<T>> seq;
        if (params.theta == 0) {
            seq = p_closed_seq(params, o.n_max + 1);
        } else if (params.theta > 0) {
            seq = p_recursion_pos(params, o.n_max + 1);
        } else {
            seq = p_recursion_neg(params, o.n_max + 1);
        }
        T fitted = seq[o.n_max].value / seq[o.n_max - 1].value;
        rows.emplace_back("fitted", fmt_value(fitted));
        rows.emplace_back("abs_diff", fmt_value(abs_val(analytic - fitted)));
    }
    if (o.format == "json") {
        json doc;
        doc["schema"] = 1;
        doc["config"] = config_json(o, backend);
        json e;
        for (auto& [k, v] : rows) e[k] = v;
        doc["exponent"] = e;
        os << doc.dump(2) << "\n";
    } else {
        os << "quantity,value\n";
        for (auto& [k, v] : rows) os << k << "," << csv_cell(v) << "\n";
    }
}

void run_zigzag(const Options& o, std::ostream& os) {
    if (o.format == "json") {
        json doc;
        doc["schema"] = 1;
        doc["config"] = config_json(o, "exact");
        json arr = json::array();
        if (o.q_flag) {
            auto polys = q_zigzag(o.n_max);
            for (unsigned n = 1; n <= o.n_max; ++n) {
                json jr;
                jr["n"] = n;
                json cs = json::array();
                for (const Integer& c : polys[n - 1].integer_coeff_vector()) {
                    if (c >= std::numeric_limits<std::int64_t>::min() &&
                        c <= std::numeric_limits<std::int64_t>::max())
                        cs.push_back(c.convert_to<std::int64_t>());
                    else
                        cs.push_back(c.str());
                }
                jr["coeffs"] = cs;
                arr.push_back(jr);
            }
        } else {
            auto nums = zigzag_numbers(o.n_max);
            for (unsigned n = 1; n <= o.n_max; ++n) {
                json jr;
                jr["n"] = n;
                jr["value"] = nums[n - 1].str();
                arr.push_back(jr);
            }
        }
        doc["rows"] = arr;
        os << doc.dump(2) << "\n";
    } else {
        os << (o.q_flag ? "n,coeffs\n" : "n,value\n");
        if (o.q_flag) {
            auto polys = q_zigzag(o.n_max);
            for (unsigned n = 1; n <= o.n_max; ++n) {
                std::string cell = "[";
                auto cs = polys[n - 1].integer_coeff_vector();
                for (std::size_t i = 0; i < cs.size(); ++i) {
                    if (i) cell += ",";
                    cell += cs[i].str();
                }
                cell += "]";
                os << n << "," << csv_cell(cell) << "\n";
            }
        } else {
            auto nums = zigzag_numbers(o.n_max);
            for (unsigned n = 1; n <= o.n_max; ++n)
                os << n << "," << nums[n - 1].str() << "\n";
        }
    }
}

template <class T>
void run_gf(const Options& o, std::ostream& os, const std::string& backend) {
    ModelParams<T> params(parse_scalar<T>(o.theta), parse_scalar<T>(o.xi));
    auto runs = p_gf(params, o.order);
    std::vector<Row> rows;
    for (unsigned n = 1; n <= o.order; ++n)
        rows.push_back({std::to_string(n), "gf", fmt_value(runs[n - 1].value),
                        fmt_value(runs[n - 1].error_bound), ""});
    emit_rows(o, os, backend, rows, false);
}

int dispatch(const Options& o, std::ostream& os) {
    const bool rational_inputs = (o.theta.empty() || is_rational_literal(o.theta)) &&
                                 (o.xi.empty() || is_rational_literal(o.xi));

    if (o.command == "zigzag") {
        run_zigzag(o, os);
        return 0;
    }
    if (o.command == "mc" || o.command == "quad" || o.method == "mc" || o.method == "quad") {
        Method m = parse_method(o.command == "table" ? o.method : o.command);
        auto rows = oracle_rows(o, m);
        emit_rows(o, os, "double", rows, false);
        return 0;
    }

    bool exact = rational_inputs && o.method != "spectral";
    if (o.command == "exponent" && exact) {
        // theta < 0 has no exact exponent formula
        if (parse_scalar<Rational>(o.theta) < 0) exact = false;
    }
    const std::string backend = exact ? "exact" : "float";

    if (o.command == "table") {
        return exact ? run_table<Rational>(o, os, backend) : run_table<Real>(o, os, backend);
    }
    if (o.command == "exponent") {
        if (exact) run_exponent<Rational>(o, os, backend);
        else run_exponent<Real>(o, os, backend);
        return 0;
    }
    if (o.command == "gf") {
        if (exact) run_gf<Rational>(o, os, backend);
        else run_gf<Real>(o, os, backend);
        return 0;
    }
    throw std::invalid_argument("unknown command: " + o.command);
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"persistence probabilities of a lag-one comparison chain"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--precision", o.precision, "working precision in bits for float runs")
        ->envname("QPERSIST_PRECISION");
    app.add_option("--tol", o.tol, "tolerance (comparison gate, series/quad target)");
    app.add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", o.seed, "RNG seed for mc");
    app.add_option("--out", o.out, "write output to file instead of stdout");

    const std::vector<std::string> method_names = {"closed", "recursion", "gf", "composition",
                                                   "spectral", "mc", "quad", "all"};

    CLI::App* table = app.add_subcommand("table", "p_n by one method or all applicable ones");
    table->add_option("--theta", o.theta)->required();
    table->add_option("--xi", o.xi)->required();
    table->add_option("--n-max", o.n_max);
    table->add_option("--method", o.method)->check(CLI::IsMember(method_names));
    table->add_option("--trials", o.trials, "trials when --method mc");

    CLI::App* compare = app.add_subcommand("compare", "alias for table --method all");
    compare->add_option("--theta", o.theta)->required();
    compare->add_option("--xi", o.xi)->required();
    compare->add_option("--n-max", o.n_max);

    CLI::App* exponent = app.add_subcommand("exponent", "decay rate of p_n");
    exponent->add_option("--theta", o.theta)->required();
    exponent->add_option("--xi", o.xi)->required();
    exponent->add_option("--n-max", o.n_max, "n used by --empirical");
    exponent->add_flag("--empirical", o.empirical, "also fit the rate from p_n");

    CLI::App* zigzag = app.add_subcommand("zigzag", "zigzag numbers E_n or q-polynomials");
    zigzag->add_option("--n-max", o.n_max);
    zigzag->add_flag("--q", o.q_flag, "emit E_n(q) coefficient vectors");

    CLI::App* gf = app.add_subcommand("gf", "p_1..p_order from the generating function");
    gf->add_option("--theta", o.theta)->required();
    gf->add_option("--xi", o.xi)->required();
    gf->add_option("--order", o.order);

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo estimates with standard errors");
    mc->add_option("--theta", o.theta)->required();
    mc->add_option("--xi", o.xi)->required();
    mc->add_option("--n-max", o.n_max);
    mc->add_option("--trials", o.trials);

    CLI::App* quad = app.add_subcommand("quad", "numerical integration, n <= 6");
    quad->add_option("--theta", o.theta)->required();
    quad->add_option("--xi", o.xi)->required();
    quad->add_option("--n-max", o.n_max);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    for (auto* sub : {table, compare, exponent, zigzag, gf, mc, quad})
        if (sub->parsed()) o.command = sub->get_name();
    if (o.command == "compare") {
        o.command = "table";
        o.method = "all";
    }

    try {
        if (o.precision < 53) throw std::domain_error("--precision must be >= 53");
        unsigned prec = o.precision;
        if (o.command == "exponent" && o.empirical) {
            // the fitted ratio needs the alternating recursions at n_max + 1
            unsigned need = 53 + 4 * (o.n_max + 1) + 16;
            prec = std::max(prec, need);
        }
        set_default_precision_bits(prec);

        std::ostringstream buf;
        int rc = dispatch(o, buf);
        if (o.out.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream f(o.out, std::ios::binary);
            if (!f) throw std::runtime_error("cannot open output file: " + o.out);
            f << buf.str();
        }
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

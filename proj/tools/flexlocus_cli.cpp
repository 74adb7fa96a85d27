// Command-line front end: parse polynomials, run the flex computations, and
// print text or JSON reports with stable formatting.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flexlocus/flex.hpp"
#include "flexlocus/macaulay.hpp"
#include "flexlocus/oracle.hpp"
#include "flexlocus/parser.hpp"
#include "flexlocus/rational.hpp"
#include "flexlocus/selftest.hpp"

using json = nlohmann::ordered_json;
using namespace flexlocus;

namespace {

struct Options {
    std::string field = "q";
    uint64_t seed = 0x5eed;
    bool as_json = false;
    std::string out_file;
    std::string input;
    std::string point;
    std::string dir;
};

std::string read_input(const std::string& input) {
    std::ifstream in(input);
    if (in.good()) {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return input;
}

void emit(const Options& opt, const std::string& text) {
    if (opt.out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.out_file, std::ios::binary);
        if (!out) throw validation_error("cannot open output file: " + opt.out_file);
        out << text;
    }
}

template <class K>
std::vector<K> parse_point(const std::string& text, const typename K::Ctx& ctx, int expect) {
    std::vector<K> out;
    std::string cur;
    std::istringstream ss(text);
    while (std::getline(ss, cur, ',')) {
        // strip whitespace
        size_t a = cur.find_first_not_of(" \t");
        size_t b = cur.find_last_not_of(" \t");
        if (a == std::string::npos) throw validation_error("empty coordinate in point");
        out.push_back(ctx.from_string(cur.substr(a, b - a + 1)));
    }
    if (int(out.size()) != expect)
        throw validation_error("expected " + std::to_string(expect) + " coordinates, got " +
                               std::to_string(out.size()));
    bool all_zero = true;
    for (const auto& c : out)
        if (!c.is_zero()) { all_zero = false; break; }
    if (all_zero) throw validation_error("the zero vector is not a projective point");
    return out;
}

template <class K>
json point_json(const std::vector<K>& p) {
    json arr = json::array();
    for (const auto& c : normalize_point(p)) arr.push_back(c.to_string());
    return arr;
}

template <class K>
std::string point_text(const std::vector<K>& p) {
    std::string s = "(";
    auto q = normalize_point(p);
    for (size_t i = 0; i < q.size(); ++i) {
        if (i) s += ":";
        s += q[i].to_string();
    }
    return s + ")";
}

json contact_json(const Contact& c) {
    if (c.infinite) return json("infinity");
    return json(c.order);
}

const char* trilean_name(Trilean t) {
    switch (t) {
        case Trilean::yes: return "yes";
        case Trilean::no_evidence: return "no_evidence";
        default: return "inconclusive";
    }
}

template <class K>
json certificate_json(const FlexCertificate<K>& cert) {
    json j;
    j["point"] = point_json(cert.point);
    j["on_hypersurface"] = cert.on_hypersurface;
    j["is_flex"] = cert.is_flex;
    if (cert.line_direction) j["line_direction"] = point_json(*cert.line_direction);
    else j["line_direction"] = nullptr;
    j["unique_line"] = trilean_name(cert.unique_line);
    if (cert.contact_order) j["contact_order"] = contact_json(*cert.contact_order);
    else j["contact_order"] = nullptr;
    return j;
}

template <class K>
int cmd_rho(const Options& opt, const typename K::Ctx& ctx) {
    std::mt19937_64 rng(opt.seed);
    MultiPoly<K> f = parse_poly<K>(read_input(opt.input), ctx);
    Hypersurface<K> V(f, rng);
    FlexPolynomial<K> fp = flex_polynomial(V, opt.seed);
    if (opt.as_json) {
        json j;
        j["field"] = ctx.describe();
        j["n"] = V.n();
        j["d"] = V.d();
        j["rho"] = print_poly(fp.rho);
        j["degree"] = fp.rho.is_zero() ? -1 : fp.rho.total_degree();
        j["ell"] = print_poly(fp.ell);
        j["normal_form"] = fp.normal_form;
        emit(opt, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "rho = " << print_poly(fp.rho) << "\n";
        os << "degree " << fp.rho.total_degree() << ", reduced modulo f (grevlex), ell = "
           << print_poly(fp.ell) << "\n";
        emit(opt, os.str());
    }
    return 0;
}

template <class K>
int cmd_isflex(const Options& opt, const typename K::Ctx& ctx) {
    std::mt19937_64 rng(opt.seed);
    MultiPoly<K> f = parse_poly<K>(read_input(opt.input), ctx);
    Hypersurface<K> V(f, rng);
    std::vector<K> p = parse_point<K>(opt.point, ctx, V.n() + 1);
    bool flex = is_flex(V, p, opt.seed);
    if (opt.as_json) {
        json j;
        j["point"] = point_json(p);
        j["is_flex"] = flex;
        emit(opt, j.dump(2) + "\n");
    } else {
        emit(opt, point_text(p) + (flex ? " is a flex point\n" : " is not a flex point\n"));
    }
    return 0;
}

template <class K>
int cmd_contact(const Options& opt, const typename K::Ctx& ctx) {
    std::mt19937_64 rng(opt.seed);
    MultiPoly<K> f = parse_poly<K>(read_input(opt.input), ctx);
    Hypersurface<K> V(f, rng);
    std::vector<K> p = parse_point<K>(opt.point, ctx, V.n() + 1);
    std::vector<K> q = parse_point<K>(opt.dir, ctx, V.n() + 1);
    Contact c = contact_order(V, p, q);
    if (opt.as_json) {
        json j;
        j["point"] = point_json(p);
        j["direction"] = point_json(q);
        j["contact_order"] = contact_json(c);
        emit(opt, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "contact order at " << point_text(p) << " along " << point_text(q) << " = ";
        if (c.infinite) os << "infinity (line contained in V)";
        else os << c.order;
        os << "\n";
        emit(opt, os.str());
    }
    return 0;
}

template <class K>
int cmd_flexline(const Options& opt, const typename K::Ctx& ctx) {
    std::mt19937_64 rng(opt.seed);
    MultiPoly<K> f = parse_poly<K>(read_input(opt.input), ctx);
    Hypersurface<K> V(f, rng);
    std::vector<K> p = parse_point<K>(opt.point, ctx, V.n() + 1);
    FlexCertificate<K> cert = flex_line(V, p, opt.seed);
    if (opt.as_json) {
        emit(opt, certificate_json(cert).dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "point " << point_text(cert.point) << ": flex\n";
        if (cert.line_direction) {
            os << "unique flex line through " << point_text(*cert.line_direction) << ", contact order ";
            if (cert.contact_order->infinite) os << "infinity (line contained in V)";
            else os << cert.contact_order->order;
            os << "\n";
        } else {
            os << "flex line: " << trilean_name(cert.unique_line)
               << " (resultant gradient vanished on all slots)\n";
        }
        emit(opt, os.str());
    }
    return 0;
}

int cmd_degrees(const Options& opt, int n, int d) {
    DegreeReport rep = degree_report(n, d);
    if (opt.as_json) {
        json j;
        j["n"] = rep.n;
        j["d"] = rep.d;
        j["deg_rho"] = rep.deg_rho;
        j["deg_flex_locus"] = rep.deg_flex_locus;
        if (rep.deg_line_locus) j["deg_line_locus"] = *rep.deg_line_locus;
        emit(opt, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "n = " << rep.n << ", d = " << rep.d << "\n";
        os << "deg rho        = " << rep.deg_rho << "\n";
        os << "deg flex locus = " << rep.deg_flex_locus << "\n";
        if (rep.deg_line_locus) os << "deg line locus = " << *rep.deg_line_locus << "\n";
        emit(opt, os.str());
    }
    return 0;
}

template <class K>
int cmd_res(const Options& opt, const typename K::Ctx& ctx) {
    // input: one homogeneous polynomial per line (or ';'-separated)
    std::string text = read_input(opt.input);
    for (char& c : text)
        if (c == ';') c = '\n';
    std::vector<std::string> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    }
    if (lines.empty()) throw validation_error("no polynomials given");
    int nv = int(lines.size());
    std::vector<MultiPoly<K>> polys;
    std::vector<int> degs;
    for (const auto& l : lines) {
        MultiPoly<K> f = parse_poly<K>(l, ctx, nv);
        if (f.is_zero() || !f.is_homogeneous() || f.total_degree() < 1)
            throw validation_error("system entries must be nonzero homogeneous of positive degree");
        degs.push_back(f.total_degree());
        polys.push_back(std::move(f));
    }
    K r = resultant_scalar(polys, DegreeVector(degs), opt.seed);
    if (opt.as_json) {
        json j;
        j["field"] = ctx.describe();
        j["degrees"] = degs;
        j["resultant"] = r.to_string();
        emit(opt, j.dump(2) + "\n");
    } else {
        emit(opt, "resultant = " + r.to_string() + "\n");
    }
    return 0;
}

int cmd_selftest(const Options& opt) {
    auto results = selftest::run_all(opt.seed);
    if (opt.as_json) {
        json arr = json::array();
        for (const auto& r : results) {
            json j;
            j["criterion"] = r.index;
            j["name"] = r.name;
            j["pass"] = r.pass;
            j["detail"] = r.detail;
            arr.push_back(j);
        }
        emit(opt, arr.dump(2) + "\n");
    } else {
        emit(opt, selftest::format_results(results));
    }
    return selftest::all_passed(results) ? 0 : 3;
}

struct FieldTag {
    bool rational;
    uint64_t p;
};

FieldTag parse_field(const std::string& s) {
    if (s == "q") return {true, 0};
    if (s.rfind("fp:", 0) == 0) {
        const std::string num = s.substr(3);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw validation_error("malformed field spec: " + s);
        uint64_t p = std::stoull(num);
        Fp::Ctx check(p);  // validates odd prime
        return {false, p};
    }
    throw validation_error("unknown field: " + s + " (expected q or fp:P)");
}

template <class Fn>
int with_field(const std::string& field, Fn&& fn) {
    FieldTag tag = parse_field(field);
    if (tag.rational) {
        Rational::Ctx ctx;
        return fn(ctx);
    }
    Fp::Ctx ctx(tag.p);
    return fn(ctx);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact flex-locus computations for projective hypersurfaces"};
    app.require_subcommand(1);

    Options opt;
    int deg_n = 0, deg_d = 0;

    auto add_common = [&](CLI::App* sub, bool with_input) {
        sub->add_option("--field", opt.field, "Coefficient field: q or fp:P (odd prime P)");
        sub->add_option("--seed", opt.seed, "Seed for randomized internals");
        sub->add_flag("--json", opt.as_json, "Emit JSON");
        sub->add_option("--out", opt.out_file, "Write output to a file");
        if (with_input)
            sub->add_option("input", opt.input, "Polynomial text, or path to a file holding it")
                ->required();
    };

    CLI::App* rho = app.add_subcommand("rho", "Compute the flex polynomial of a hypersurface");
    add_common(rho, true);

    CLI::App* isflex = app.add_subcommand("isflex", "Test whether a point is a flex point");
    add_common(isflex, true);
    isflex->add_option("--point", opt.point, "Projective point, comma-separated")->required();

    CLI::App* contact = app.add_subcommand("contact", "Order of contact of a line with V");
    add_common(contact, true);
    contact->add_option("--point", opt.point, "Base point on V")->required();
    contact->add_option("--dir", opt.dir, "Direction spanning the line with the point")->required();

    CLI::App* flexline = app.add_subcommand("flexline", "Recover the flex line at a flex point");
    add_common(flexline, true);
    flexline->add_option("--point", opt.point, "Flex point on V")->required();

    CLI::App* degrees = app.add_subcommand("degrees", "Closed-form degrees of the flex locus");
    add_common(degrees, false);
    degrees->add_option("n", deg_n, "Ambient projective dimension")->required();
    degrees->add_option("d", deg_d, "Degree of the hypersurface")->required();

    CLI::App* res = app.add_subcommand("res", "Raw resultant of a square homogeneous system");
    add_common(res, true);

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "Run the acceptance suite");
    add_common(selftest_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rho->parsed())
            return with_field(opt.field, [&](const auto& ctx) {
                using K = std::decay_t<decltype(ctx.zero())>;
                return cmd_rho<K>(opt, ctx);
            });
        if (isflex->parsed())
            return with_field(opt.field, [&](const auto& ctx) {
                using K = std::decay_t<decltype(ctx.zero())>;
                return cmd_isflex<K>(opt, ctx);
            });
        if (contact->parsed())
            return with_field(opt.field, [&](const auto& ctx) {
                using K = std::decay_t<decltype(ctx.zero())>;
                return cmd_contact<K>(opt, ctx);
            });
        if (flexline->parsed())
            return with_field(opt.field, [&](const auto& ctx) {
                using K = std::decay_t<decltype(ctx.zero())>;
                return cmd_flexline<K>(opt, ctx);
            });
        if (degrees->parsed()) return cmd_degrees(opt, deg_n, deg_d);
        if (res->parsed())
            return with_field(opt.field, [&](const auto& ctx) {
                using K = std::decay_t<decltype(ctx.zero())>;
                return cmd_res<K>(opt, ctx);
            });
        if (selftest_cmd->parsed()) return cmd_selftest(opt);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

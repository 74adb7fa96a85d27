#pragma once

#include <cctype>
#include <string>

#include <gmpxx.h>

#include "flexlocus/errors.hpp"
#include "flexlocus/multipoly.hpp"

namespace flexlocus {

// Polynomial text grammar: terms separated by + / -, a term is `coeff`,
// `coeff*mono` or `mono`, a mono is `x0^3*x1` with variables x0..xN (and
// y0..yN for bihomogeneous data), coefficients integers or a/b rationals.
// Whitespace is insignificant.

namespace parser_detail {

struct RawTerm {
    mpq_class coeff;
    std::vector<std::pair<char, int>> vars;  // (letter, index)
    std::vector<int> powers;
};

inline std::vector<RawTerm> tokenize(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s.empty()) throw validation_error("empty polynomial text");

    std::vector<RawTerm> terms;
    size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        } else if (!first) {
            throw validation_error("expected '+' or '-' between terms");
        }
        first = false;
        RawTerm term;
        term.coeff = sign;
        bool saw_factor = false;
        while (i < s.size()) {
            if (s[i] == 'x' || s[i] == 'y') {
                char letter = s[i++];
                size_t j = i;
                while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
                if (j == i) throw validation_error("variable without index");
                int index = std::stoi(s.substr(i, j - i));
                i = j;
                int power = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    j = i;
                    while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
                    if (j == i) throw validation_error("exponent without digits");
                    power = std::stoi(s.substr(i, j - i));
                    i = j;
                }
                term.vars.emplace_back(letter, index);
                term.powers.push_back(power);
            } else if (std::isdigit((unsigned char)s[i])) {
                size_t j = i;
                while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
                mpz_class num(s.substr(i, j - i));
                i = j;
                mpz_class den = 1;
                if (i < s.size() && s[i] == '/') {
                    ++i;
                    j = i;
                    while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
                    if (j == i) throw validation_error("denominator without digits");
                    den = mpz_class(s.substr(i, j - i));
                    if (den == 0) throw validation_error("zero denominator");
                    i = j;
                }
                mpq_class q(num, den);
                q.canonicalize();
                term.coeff *= q;
            } else {
                throw validation_error(std::string("unexpected character '") + s[i] + "' in polynomial");
            }
            saw_factor = true;
            if (i < s.size() && s[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!saw_factor) throw validation_error("empty term in polynomial");
        terms.push_back(std::move(term));
    }
    return terms;
}

}  // namespace parser_detail

/// Parse the grammar into a MultiPoly. If only x-variables appear, the ring
/// has m variables (m = max index + 1, or `nvars` when given). If any
/// y-variable appears, the ring has 2m variables: x_i at slot i, y_i at m+i.
template <class K>
MultiPoly<K> parse_poly(const std::string& text, const typename K::Ctx& ctx, int nvars = -1) {
    auto raw = parser_detail::tokenize(text);
    int max_idx = -1;
    bool has_y = false;
    for (const auto& t : raw)
        for (const auto& [letter, idx] : t.vars) {
            max_idx = std::max(max_idx, idx);
            if (letter == 'y') has_y = true;
        }
    int m = (nvars > 0) ? nvars : max_idx + 1;
    if (max_idx >= m && nvars > 0) throw validation_error("variable index exceeds declared count");
    if (m <= 0) m = 1;  // constant polynomial
    int total = has_y ? 2 * m : m;

    MultiPoly<K> result(total, ctx);
    for (const auto& t : raw) {
        Monomial mono(total);
        for (size_t k = 0; k < t.vars.size(); ++k) {
            auto [letter, idx] = t.vars[k];
            int slot = (letter == 'y') ? m + idx : idx;
            int e = mono[slot] + t.powers[k];
            if (e > 255) throw validation_error("exponent too large");
            mono[slot] = uint8_t(e);
        }
        result.add_term(mono, ctx.from_mpq(t.coeff));
    }
    result.refresh_grade();
    return result;
}

/// Print in the same grammar, terms in decreasing grevlex order. `xblock`
/// (default: all variables) is the size of the x-block; later variables print
/// as y0, y1, ...
template <class K>
std::string print_poly(const MultiPoly<K>& f, int xblock = -1) {
    if (f.is_zero()) return "0";
    if (xblock < 0) xblock = f.nvars();
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = c.to_string();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mono;
        for (int i = 0; i < f.nvars(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            if (i < xblock) mono += "x" + std::to_string(i);
            else mono += "y" + std::to_string(i - xblock);
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty()) {
            out += cs;
        } else if (cs == "1") {
            out += mono;
        } else {
            out += cs + "*" + mono;
        }
    }
    return out;
}

}  // namespace flexlocus

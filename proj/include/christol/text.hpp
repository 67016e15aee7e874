#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "christol/poly.hpp"

namespace christol {

// canonical element text: residue for prime fields, polynomial in g with
// descending powers for extension fields ("g^2+2g+1", "g", "0")
inline std::string fq_to_string(const FieldCtx& F, Fq a) {
    if (F.e() == 1) return std::to_string(a.v);
    auto c = F.coords(a);
    std::string out;
    for (int k = static_cast<int>(F.e()) - 1; k >= 0; --k) {
        if (c[k] == 0) continue;
        if (!out.empty()) out += '+';
        if (k == 0) {
            out += std::to_string(c[k]);
        } else {
            if (c[k] != 1) out += std::to_string(c[k]);
            out += 'g';
            if (k > 1) out += '^' + std::to_string(k);
        }
    }
    return out.empty() ? "0" : out;
}

namespace detail {

class TextCursor {
public:
    explicit TextCursor(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        require(accept(c), errc::parse_error,
                std::string("expected '") + c + "' in \"" + std::string(s_) + "\"");
    }
    long long integer() {
        skip_ws();
        require(pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])),
                errc::parse_error, "expected an integer in \"" + std::string(s_) + "\"");
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            require(v <= (1LL << 40), errc::parse_error, "integer literal too large");
            ++pos_;
        }
        return v;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

// F_p-polynomial in g: signed sum of [int]['*']['g'['^'k]] terms
inline Fq parse_gpoly(const FieldCtx& F, TextCursor& cur, char terminator) {
    Fq acc{};
    bool first = true;
    for (;;) {
        if (cur.peek() == terminator || cur.done()) break;
        bool negative = false;
        if (cur.accept('-'))
            negative = true;
        else if (!first)
            cur.expect('+');
        else
            cur.accept('+');
        first = false;

        Fq coeff = F.one();
        bool seen = false;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            coeff = F.from_int(cur.integer());
            seen = true;
        }
        cur.accept('*');
        if (cur.accept('g')) {
            require(F.e() > 1, errc::parse_error, "generator g needs an extension field");
            long long k = 1;
            if (cur.accept('^')) k = cur.integer();
            coeff = F.mul(coeff, F.pow(F.gen(), static_cast<std::uint64_t>(k)));
            seen = true;
        }
        require(seen, errc::parse_error, "empty term in coefficient");
        if (negative) coeff = F.neg(coeff);
        acc = F.add(acc, coeff);
    }
    require(!first, errc::parse_error, "empty coefficient");
    return acc;
}

} // namespace detail

// element text: the same grammar as parenthesised coefficients
inline Fq parse_fq(const FieldCtx& F, std::string_view text) {
    detail::TextCursor cur(text);
    Fq v = detail::parse_gpoly(F, cur, '\0');
    require(cur.done(), errc::parse_error, "trailing input in element text");
    return v;
}

// Bivariate polynomial grammar: signed sum of terms, each
// [coeff] ['*'] [x['^'k]] ['*'] [y['^'m]], coeff an integer or a
// parenthesised F_p-polynomial in g.
inline BPoly parse_bpoly(const FieldCtx& F, std::string_view text) {
    detail::TextCursor cur(text);
    BPoly out(F);
    bool first = true;
    while (!cur.done()) {
        bool negative = false;
        if (cur.accept('-'))
            negative = true;
        else if (!first)
            cur.expect('+');
        else
            cur.accept('+');
        first = false;

        Fq coeff = F.one();
        bool seen = false;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            coeff = F.from_int(cur.integer());
            seen = true;
            cur.accept('*');
        } else if (cur.accept('(')) {
            coeff = detail::parse_gpoly(F, cur, ')');
            cur.expect(')');
            seen = true;
            cur.accept('*');
        }
        if (cur.accept('g')) { // bare generator coefficient, e.g. "g*y" or "2g^2*x"
            require(F.e() > 1, errc::parse_error, "generator g needs an extension field");
            long long k = 1;
            if (cur.accept('^')) k = cur.integer();
            coeff = F.mul(coeff, F.pow(F.gen(), static_cast<std::uint64_t>(k)));
            seen = true;
            cur.accept('*');
        }
        long long i = 0, j = 0;
        if (cur.accept('x')) {
            i = 1;
            if (cur.accept('^')) i = cur.integer();
            seen = true;
            cur.accept('*');
        }
        if (cur.accept('y')) {
            j = 1;
            if (cur.accept('^')) j = cur.integer();
            seen = true;
        }
        require(seen, errc::parse_error, "empty term in polynomial");
        if (negative) coeff = F.neg(coeff);
        out.add_term(static_cast<int>(i), static_cast<int>(j), coeff);
    }
    require(!out.is_zero() || !first, errc::parse_error, "empty polynomial text");
    return out;
}

// comma-separated element list, e.g. a root prefix "0,0,1" or "g+1,0"
inline std::vector<Fq> parse_fq_list(const FieldCtx& F, std::string_view text) {
    std::vector<Fq> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string_view piece = text.substr(
            start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_fq(F, piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

struct FieldSpec {
    std::uint32_t p = 0;
    std::uint32_t e = 1;
    std::optional<std::vector<std::uint32_t>> modulus;
};

// "p=2,e=1" or "p=2 e=2 modulus=1,1,1" (low-to-high coefficients)
inline FieldSpec parse_field_spec(std::string_view text) {
    FieldSpec spec;
    bool saw_p = false, in_modulus = false;
    std::size_t start = 0;
    auto handle = [&](std::string_view tok) {
        if (tok.empty()) return;
        std::size_t eq = tok.find('=');
        if (eq == std::string_view::npos) {
            require(in_modulus, errc::parse_error,
                    "stray token in field spec: " + std::string(tok));
            detail::TextCursor cur(tok);
            spec.modulus->push_back(static_cast<std::uint32_t>(cur.integer()));
            require(cur.done(), errc::parse_error, "bad modulus coefficient");
            return;
        }
        std::string_view key = tok.substr(0, eq), val = tok.substr(eq + 1);
        detail::TextCursor cur(val);
        if (key == "p") {
            spec.p = static_cast<std::uint32_t>(cur.integer());
            saw_p = true;
            in_modulus = false;
        } else if (key == "e") {
            spec.e = static_cast<std::uint32_t>(cur.integer());
            in_modulus = false;
        } else if (key == "modulus") {
            spec.modulus.emplace();
            spec.modulus->push_back(static_cast<std::uint32_t>(cur.integer()));
            in_modulus = true;
        } else {
            raise(errc::parse_error, "unknown field spec key: " + std::string(key));
        }
        require(cur.done(), errc::parse_error, "bad field spec value");
    };
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))) {
            handle(text.substr(start, i - start));
            start = i + 1;
        }
    }
    require(saw_p, errc::parse_error, "field spec needs p=<prime>");
    return spec;
}

inline std::string fq_list_to_string(const FieldCtx& F, const std::vector<Fq>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += fq_to_string(F, v[i]);
    }
    return out;
}

inline std::string bpoly_to_string(const FieldCtx& F, const BPoly& P) {
    if (P.is_zero()) return "0";
    std::string out;
    for (const auto& [ij, c] : P.terms()) {
        if (!out.empty()) out += " + ";
        std::string coeff = fq_to_string(F, c);
        bool has_var = ij.first > 0 || ij.second > 0;
        if (coeff != "1" || !has_var) {
            bool needs_parens = F.e() > 1 && coeff.find('+') != std::string::npos;
            out += needs_parens ? "(" + coeff + ")" : coeff;
            if (has_var) out += "*";
        }
        if (ij.first > 0) {
            out += "x";
            if (ij.first > 1) out += "^" + std::to_string(ij.first);
            if (ij.second > 0) out += "*";
        }
        if (ij.second > 0) {
            out += "y";
            if (ij.second > 1) out += "^" + std::to_string(ij.second);
        }
    }
    return out;
}

} // namespace christol

#include "charspace/words.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "charspace/errors.hpp"

namespace charspace {

Monomial Monomial::leaf(u32 var) {
    Monomial m;
    m.code = {static_cast<int>(var)};
    m.degree = 1;
    return m;
}

Monomial Monomial::node(const Monomial& l, const Monomial& r) {
    Monomial m;
    m.code.reserve(1 + l.code.size() + r.code.size());
    m.code.push_back(0);
    m.code.insert(m.code.end(), l.code.begin(), l.code.end());
    m.code.insert(m.code.end(), r.code.begin(), r.code.end());
    m.degree = l.degree + r.degree;
    return m;
}

namespace {

std::string render(const std::vector<int>& code, std::size_t& pos) {
    if (code[pos] > 0) {
        return "x" + std::to_string(code[pos++]);
    }
    ++pos; // internal marker
    std::string l = render(code, pos);
    std::string r = render(code, pos);
    return "(* " + l + " " + r + ")";
}

} // namespace

std::string Monomial::sexpr() const {
    std::size_t pos = 0;
    return render(code, pos);
}

std::string MultilinearElement::sexpr() const {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        std::string t = terms[i].second.sexpr();
        if (terms[i].first != 1) {
            t = "(s " + std::to_string(terms[i].first) + " " + t + ")";
        }
        out = (i == 0) ? t : "(+ " + out + " " + t + ")";
    }
    return out;
}

MultilinearElement element_from_monomial(const Monomial& m) {
    MultilinearElement e;
    e.degree = m.degree;
    e.terms = {{1u, m}};
    return e;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Token {
    std::string text;
    std::size_t offset;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(' || c == ')') {
            out.push_back({std::string(1, c), i});
            ++i;
        } else {
            std::size_t j = i;
            while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
                   s[j] != '(' && s[j] != ')') {
                ++j;
            }
            out.push_back({s.substr(i, j - i), i});
            i = j;
        }
    }
    return out;
}

[[noreturn]] void syntax_error(const std::string& what, std::size_t offset) {
    throw ParseError("word syntax error at offset " + std::to_string(offset) + ": " + what);
}

// A raw combination during expansion: monomial -> coefficient, plus the
// variable set of each monomial tracked as a bitmask.
struct RawTerm {
    Monomial mono;
    u64 vars; // bitmask of 1-based variables, bit (v-1)
};

struct RawElement {
    std::map<std::vector<int>, std::pair<u32, RawTerm>> terms; // code -> (coeff, term)
};

void add_term(const Fp& f, RawElement& e, u32 coeff, const RawTerm& t) {
    if (coeff == 0) return;
    auto it = e.terms.find(t.mono.code);
    if (it == e.terms.end()) {
        e.terms.emplace(t.mono.code, std::make_pair(coeff, t));
    } else {
        it->second.first = f.add(it->second.first, coeff);
        if (it->second.first == 0) e.terms.erase(it);
    }
}

struct Parser {
    const Fp& field;
    std::vector<Token> toks;
    std::size_t pos = 0;

    const Token& peek() {
        if (pos >= toks.size()) syntax_error("unexpected end of input", toks.empty() ? 0 : toks.back().offset);
        return toks[pos];
    }

    Token take() {
        const Token& t = peek();
        ++pos;
        return t;
    }

    RawElement parse() {
        const Token t = peek();
        if (t.text == "(") return parse_list();
        return parse_leaf();
    }

    RawElement parse_leaf() {
        Token t = take();
        if (t.text.size() < 2 || t.text[0] != 'x') {
            syntax_error("expected a variable x1..xN, got '" + t.text + "'", t.offset);
        }
        for (std::size_t i = 1; i < t.text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) {
                syntax_error("expected a variable x1..xN, got '" + t.text + "'", t.offset);
            }
        }
        unsigned long var = std::stoul(t.text.substr(1));
        if (var == 0 || var > 62) syntax_error("variable index out of range", t.offset);
        RawElement e;
        RawTerm term{Monomial::leaf(static_cast<u32>(var)), u64(1) << (var - 1)};
        add_term(field, e, 1, term);
        return e;
    }

    RawElement parse_list() {
        Token open = take(); // '('
        Token op = take();
        RawElement result;
        if (op.text == "*") {
            RawElement a = parse();
            RawElement b = parse();
            for (const auto& [ca, ta] : a.terms) {
                for (const auto& [cb, tb] : b.terms) {
                    if (ta.second.vars & tb.second.vars) {
                        u64 overlap = ta.second.vars & tb.second.vars;
                        u32 v = 1;
                        while (!(overlap & 1)) {
                            overlap >>= 1;
                            ++v;
                        }
                        throw ValidationError("variable x" + std::to_string(v) +
                                              " repeated inside a monomial");
                    }
                    RawTerm t{Monomial::node(ta.second.mono, tb.second.mono),
                              ta.second.vars | tb.second.vars};
                    add_term(field, result, field.mul(ta.first, tb.first), t);
                }
            }
        } else if (op.text == "+" || op.text == "-") {
            RawElement a = parse();
            RawElement b = parse();
            result = a;
            for (const auto& [code, cb] : b.terms) {
                u32 coeff = op.text == "+" ? cb.first : field.neg(cb.first);
                add_term(field, result, coeff, cb.second);
            }
        } else if (op.text == "s") {
            Token c = take();
            std::size_t idx = 0;
            long long val = 0;
            try {
                val = std::stoll(c.text, &idx);
            } catch (const std::exception&) {
                syntax_error("expected an integer scalar, got '" + c.text + "'", c.offset);
            }
            if (idx != c.text.size()) {
                syntax_error("expected an integer scalar, got '" + c.text + "'", c.offset);
            }
            u32 scalar = field.reduce(val);
            RawElement a = parse();
            for (const auto& [code, ca] : a.terms) {
                add_term(field, result, field.mul(scalar, ca.first), ca.second);
            }
        } else {
            syntax_error("unknown operator '" + op.text + "'", op.offset);
        }
        Token close = take();
        if (close.text != ")") syntax_error("expected ')'", close.offset);
        (void)open;
        return result;
    }
};

} // namespace

MultilinearElement parse_word(const Fp& field, const std::string& text) {
    Parser parser{field, tokenize(text)};
    if (parser.toks.empty()) throw ParseError("empty word");
    RawElement raw = parser.parse();
    if (parser.pos != parser.toks.size()) {
        syntax_error("trailing input", parser.toks[parser.pos].offset);
    }
    if (raw.terms.empty()) {
        throw ValidationError("word cancels to the zero element");
    }

    u32 degree = 0;
    for (const auto& [code, ct] : raw.terms) {
        degree = std::max(degree, ct.second.mono.degree);
    }
    const u64 want = (degree >= 64) ? ~u64(0) : ((u64(1) << degree) - 1);
    for (const auto& [code, ct] : raw.terms) {
        if (ct.second.vars != want) {
            for (u32 v = 1; v <= degree; ++v) {
                if (!(ct.second.vars & (u64(1) << (v - 1)))) {
                    throw ValidationError("monomial " + ct.second.mono.sexpr() +
                                          " is missing variable x" + std::to_string(v));
                }
            }
        }
    }

    MultilinearElement e;
    e.degree = degree;
    for (const auto& [code, ct] : raw.terms) {
        e.terms.emplace_back(ct.first, ct.second.mono);
    }
    return e;
}

u64 catalan(u32 n) {
    // n <= 30ish at desk scale; direct recurrence
    std::vector<u64> c(n + 1, 0);
    c[0] = 1;
    for (u32 i = 1; i <= n; ++i) {
        for (u32 j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
    }
    return c[n];
}

namespace {

// Bracketing shapes of n leaves; leaf payloads are slot indices 0..n-1 in
// left-to-right order, later replaced through a permutation.
std::vector<Monomial> shapes(u32 n) {
    if (n == 1) return {Monomial::leaf(1)};
    std::vector<Monomial> out;
    for (u32 left = 1; left < n; ++left) {
        for (const Monomial& l : shapes(left)) {
            for (const Monomial& r : shapes(n - left)) {
                out.push_back(Monomial::node(l, r));
            }
        }
    }
    return out;
}

} // namespace

std::vector<Monomial> enumerate_monomials(u32 t, u32 degree_cap) {
    if (t < 1) throw DimensionError("monomial degree must be >= 1");
    if (t > degree_cap) {
        throw CapExceeded("degree " + std::to_string(t) + " exceeds the cap " +
                          std::to_string(degree_cap));
    }
    std::vector<Monomial> base = shapes(t);
    std::vector<u32> perm(t);
    for (u32 i = 0; i < t; ++i) perm[i] = i + 1;

    std::vector<Monomial> out;
    for (const Monomial& shape : base) {
        std::vector<u32> p = perm;
        do {
            // relabel leaves left-to-right: slot i -> p[i]
            Monomial m = shape;
            u32 slot = 0;
            for (int& c : m.code) {
                if (c > 0) c = static_cast<int>(p[slot++]);
            }
            out.push_back(std::move(m));
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
}

std::vector<MultilinearElement> monomial_words_up_to(const Fp&, u32 t, u32 degree_cap) {
    std::vector<MultilinearElement> out;
    for (u32 k = 1; k <= t; ++k) {
        for (const Monomial& m : enumerate_monomials(k, degree_cap)) {
            out.push_back(element_from_monomial(m));
        }
    }
    return out;
}

namespace {

Vec eval_code(const StructureAlgebra& a, const std::vector<int>& code, std::size_t& pos,
              std::span<const Vec> args) {
    int c = code[pos++];
    if (c > 0) return args[static_cast<std::size_t>(c - 1)];
    Vec l = eval_code(a, code, pos, args);
    Vec r = eval_code(a, code, pos, args);
    return a.multiply(l, r);
}

} // namespace

Vec eval_monomial(const StructureAlgebra& a, const Monomial& m, std::span<const Vec> args) {
    if (args.size() < m.degree) {
        throw DimensionError("monomial of degree " + std::to_string(m.degree) +
                             " applied to " + std::to_string(args.size()) + " arguments");
    }
    std::size_t pos = 0;
    return eval_code(a, m.code, pos, args);
}

Vec eval_element(const StructureAlgebra& a, const MultilinearElement& w,
                 std::span<const Vec> args) {
    Vec out(a.dim(), 0);
    const Fp& f = a.field();
    for (const auto& [coeff, mono] : w.terms) {
        Vec v = eval_monomial(a, mono, args);
        for (u32 k = 0; k < a.dim(); ++k) {
            out[k] = f.add(out[k], f.mul(coeff, v[k]));
        }
    }
    return out;
}

Subspace eval_span(const MultilinearElement& w, const StructureAlgebra& a,
                   std::span<const Subspace> args) {
    if (args.size() != w.degree) {
        throw DimensionError("word of degree " + std::to_string(w.degree) + " needs " +
                             std::to_string(w.degree) + " arguments, got " +
                             std::to_string(args.size()));
    }
    if (w.is_zero()) return a.zero_subspace();
    for (const Subspace& s : args) {
        if (s.ambient() != a.dim()) throw DimensionError("eval_span ambient mismatch");
        if (s.is_zero()) return a.zero_subspace();
    }

    // odometer over basis tuples
    std::vector<std::size_t> idx(w.degree, 0);
    std::vector<Vec> tuple(w.degree);
    Mat values;
    while (true) {
        for (u32 i = 0; i < w.degree; ++i) tuple[i] = args[i].rows()[idx[i]];
        values.push_back(eval_element(a, w, tuple));
        u32 i = 0;
        while (i < w.degree) {
            if (++idx[i] < args[i].rows().size()) break;
            idx[i] = 0;
            ++i;
        }
        if (i == w.degree) break;
    }
    return Subspace(a.field(), a.dim(), values);
}

} // namespace charspace

#include "nlsd/box.hpp"

#include <cctype>
#include <sstream>

namespace nlsd {

namespace {

const Rat kZero(0);
const Rat kOne(1);
const Rat kHalf(1, 2);

}  // namespace

std::string ValidationError::message() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::OutOfRange:
            os << "entry p" << (p0 + 1) << " outside [0,1]";
            break;
        case Kind::BlockNotNormalized:
            os << "block (x=" << p0 << ",y=" << p1 << ") does not sum to 1";
            break;
        case Kind::SignallingAlice:
            os << "Alice marginal p(a=" << p0 << "|x=" << p1 << ") depends on y";
            break;
        case Kind::SignallingBob:
            os << "Bob marginal p(b=" << p0 << "|y=" << p1 << ") depends on x";
            break;
    }
    return os.str();
}

Box pr_box(int mu, int nu, int sigma) {
    Box p;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    int rhs = (x & y) ^ (mu & x) ^ (nu & y) ^ sigma;
                    p.at(a, b, x, y) = ((a ^ b) == rhs) ? kHalf : kZero;
                }
    return p;
}

Box local_box(int alpha, int beta, int gamma, int theta) {
    Box p;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            int a = (alpha & x) ^ beta;
            int b = (gamma & y) ^ theta;
            p.at(a, b, x, y) = kOne;
        }
    return p;
}

Box local_vertex(int i) {
    // L_i -> L_{alpha beta gamma} with theta = alpha*gamma ^ beta.
    static constexpr int abg[8][3] = {
        {1, 0, 1},  // L1
        {1, 1, 1},  // L2
        {0, 0, 1},  // L3
        {0, 1, 1},  // L4
        {1, 1, 0},  // L5
        {1, 0, 0},  // L6
        {0, 0, 0},  // L7
        {0, 1, 0},  // L8
    };
    if (i < 1 || i > 8) throw std::out_of_range("local_vertex: index must be in 1..8");
    int alpha = abg[i - 1][0], beta = abg[i - 1][1], gamma = abg[i - 1][2];
    return local_box(alpha, beta, gamma, (alpha & gamma) ^ beta);
}

const Box& simplex_vertex(int v) {
    static const std::array<Box, 9> verts = [] {
        std::array<Box, 9> vs;
        vs[0] = pr_box(0, 0, 0);
        for (int i = 1; i <= 8; ++i) vs[i] = local_vertex(i);
        return vs;
    }();
    if (v < 0 || v > 8) throw std::out_of_range("simplex_vertex: index must be in 0..8");
    return verts[v];
}

const std::vector<Box>& ns_vertices() {
    static const std::vector<Box> verts = [] {
        std::vector<Box> vs;
        for (int mu = 0; mu < 2; ++mu)
            for (int nu = 0; nu < 2; ++nu)
                for (int sg = 0; sg < 2; ++sg) vs.push_back(pr_box(mu, nu, sg));
        for (int al = 0; al < 2; ++al)
            for (int be = 0; be < 2; ++be)
                for (int ga = 0; ga < 2; ++ga)
                    for (int th = 0; th < 2; ++th) vs.push_back(local_box(al, be, ga, th));
        return vs;
    }();
    return verts;
}

Box mix(const std::vector<std::pair<Rat, Box>>& terms) {
    Rat total(0);
    for (const auto& [w, _] : terms) {
        if (w.sign() < 0) throw std::invalid_argument("mix: negative weight");
        total += w;
    }
    if (total != kOne) throw std::invalid_argument("mix: weights must sum to 1");
    Box out;
    for (const auto& [w, b] : terms)
        for (int i = 0; i < 16; ++i) out.e[i] += w * b.e[i];
    return out;
}

std::optional<ValidationError> find_violation(const std::array<Rat, 16>& e) {
    using K = ValidationError::Kind;
    for (int i = 0; i < 16; ++i)
        if (e[i] < kZero || e[i] > kOne) return ValidationError{K::OutOfRange, i, 0};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Rat s = e[Box::entry_index(0, 0, x, y)] + e[Box::entry_index(0, 1, x, y)] +
                    e[Box::entry_index(1, 0, x, y)] + e[Box::entry_index(1, 1, x, y)];
            if (s != kOne) return ValidationError{K::BlockNotNormalized, x, y};
        }
    for (int b = 0; b < 2; ++b)
        for (int y = 0; y < 2; ++y) {
            Rat m0 = e[Box::entry_index(0, b, 0, y)] + e[Box::entry_index(1, b, 0, y)];
            Rat m1 = e[Box::entry_index(0, b, 1, y)] + e[Box::entry_index(1, b, 1, y)];
            if (m0 != m1) return ValidationError{K::SignallingBob, b, y};
        }
    for (int a = 0; a < 2; ++a)
        for (int x = 0; x < 2; ++x) {
            Rat m0 = e[Box::entry_index(a, 0, x, 0)] + e[Box::entry_index(a, 1, x, 0)];
            Rat m1 = e[Box::entry_index(a, 0, x, 1)] + e[Box::entry_index(a, 1, x, 1)];
            if (m0 != m1) return ValidationError{K::SignallingAlice, a, x};
        }
    return std::nullopt;
}

Box validated_box(const std::array<Rat, 16>& entries) {
    if (auto err = find_violation(entries)) throw box_validation_error(*err);
    return Box{entries};
}

Correlators correlators(const Box& p) {
    Correlators c;
    auto v = correlators4<Rat>(p.e);
    c.e[0][0] = v[0];
    c.e[0][1] = v[1];
    c.e[1][0] = v[2];
    c.e[1][1] = v[3];
    return c;
}

std::array<Rat, 8> chsh_symmetries(const Box& p) {
    auto corr = correlators4<Rat>(p.e);
    std::array<Rat, 8> out{};
    for (int s = 0; s < 8; ++s) {
        Rat v(0);
        for (int k = 0; k < 4; ++k) v += kChshSigns[s][k] > 0 ? corr[k] : -corr[k];
        out[s] = v;
    }
    return out;
}

Rat chsh_max(const Box& p) { return chsh_max_of(correlators4<Rat>(p.e)); }

Rat nl(const Box& p) { return nl_of(correlators4<Rat>(p.e)); }

Rat uffink_lhs(const Box& p) { return uffink_of(correlators4<Rat>(p.e)); }

bool uffink_violates(const Box& p) { return uffink_lhs(p) > Rat(4); }

Rat uffink_lhs_symmetrized(const Box& p) {
    auto corr = correlators4<Rat>(p.e);
    Rat best = uffink_of(corr);  // the plain orientation counts as well
    for (const auto& signs : kChshSigns) {
        std::array<Rat, 4> flipped;
        for (int k = 0; k < 4; ++k) flipped[k] = signs[k] > 0 ? corr[k] : -corr[k];
        Rat v = uffink_of(flipped);
        if (best < v) best = v;
    }
    return best;
}

bool cc_trivial(const Box& p) {
    Rat c = chsh_max(p);
    return c.sign() >= 0 && Rat(3) * c * c >= Rat(32);
}

PointDiagnostics diagnostics(const Box& p) {
    PointDiagnostics d;
    d.chsh_max = chsh_max(p);
    d.nl = nl(p);
    d.uffink_lhs = uffink_lhs(p);
    d.cc_trivial = d.chsh_max.sign() >= 0 && Rat(3) * d.chsh_max * d.chsh_max >= Rat(32);
    d.in_nls = decompose(p).point.has_value();
    return d;
}

Decomposition decompose(const Box& p) {
    Decomposition d;
    Rat sum(0);
    std::array<Rat, 8> c{};
    for (int i = 0; i < 8; ++i) {
        c[i] = p.e[kFreeEntryIndex[i]];
        sum += c[i];
    }
    d.free_sum = sum;
    if (sum <= kOne) d.point = NLSPoint{kOne - sum, c};
    return d;
}

Box reconstruct(const NLSPoint& pt) {
    std::vector<std::pair<Rat, Box>> terms;
    terms.emplace_back(pt.c0, simplex_vertex(0));
    for (int i = 0; i < 8; ++i)
        if (!pt.c[i].is_zero()) terms.emplace_back(pt.c[i], simplex_vertex(i + 1));
    return mix(terms);
}

std::optional<std::array<Rat, 16>> parse_box_entries(std::string_view text) {
    std::array<Rat, 16> out{};
    int n = 0;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
        if (i >= text.size()) break;
        size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ',')
            ++j;
        auto r = parse_rational(text.substr(i, j - i));
        if (!r || n >= 16) return std::nullopt;
        out[n++] = *r;
        i = j;
    }
    if (n != 16) return std::nullopt;
    return out;
}

std::string format_box(const Box& p) {
    std::string s;
    for (int i = 0; i < 16; ++i) {
        if (i) s += ' ';
        s += p.e[i].str();
    }
    return s;
}

std::optional<Rat> parse_rational(std::string_view s) {
    if (s.empty()) return std::nullopt;
    bool neg = false;
    size_t i = 0;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    std::int64_t num = 0, den = 1;
    bool any_digit = false, after_dot = false, has_slash = false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (ch >= '0' && ch <= '9') {
            if (num > (INT64_MAX - (ch - '0')) / 10) return std::nullopt;
            num = num * 10 + (ch - '0');
            if (after_dot) {
                if (den > INT64_MAX / 10) return std::nullopt;
                den *= 10;
            }
            any_digit = true;
        } else if (ch == '.' && !after_dot && !has_slash) {
            after_dot = true;
        } else if (ch == '/' && !has_slash && !after_dot && any_digit) {
            has_slash = true;
            auto d = parse_rational(s.substr(i + 1));
            if (!d || d->sign() <= 0 || d->den() != 1) return std::nullopt;
            den = d->num();
            break;
        } else {
            return std::nullopt;
        }
    }
    if (!any_digit) return std::nullopt;
    Rat r(num, den);
    return neg ? -r : r;
}

}  // namespace nlsd

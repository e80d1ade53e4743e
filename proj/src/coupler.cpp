#include "nlsd/coupler.hpp"

#include <stdexcept>

namespace nlsd {

namespace {

int class_base(Coupler::Class cls) {
    switch (cls) {
        case Coupler::Class::D: return 0;
        case Coupler::Class::O: return 2;
        case Coupler::Class::X: return 10;
        case Coupler::Class::A: return 18;
        case Coupler::Class::S: return 50;
    }
    return -1;
}

}  // namespace

int coupler_id(const Coupler& c) {
    switch (c.cls) {
        case Coupler::Class::D:
            return c.mu;
        case Coupler::Class::O:
        case Coupler::Class::X:
            return class_base(c.cls) + 4 * c.mu + 2 * c.nu + c.sigma;
        case Coupler::Class::A:
        case Coupler::Class::S:
            return class_base(c.cls) + 16 * c.mu + 8 * c.nu + 4 * c.sigma + 2 * c.delta + c.eps;
    }
    return -1;
}

Coupler coupler_from_id(int id) {
    if (id < 0 || id >= kCouplerCount) throw std::out_of_range("coupler_from_id: id out of range");
    Coupler c;
    if (id < 2) {
        c.cls = Coupler::Class::D;
        c.mu = static_cast<std::uint8_t>(id);
    } else if (id < 18) {
        c.cls = id < 10 ? Coupler::Class::O : Coupler::Class::X;
        int r = id - class_base(c.cls);
        c.mu = (r >> 2) & 1;
        c.nu = (r >> 1) & 1;
        c.sigma = r & 1;
    } else {
        c.cls = id < 50 ? Coupler::Class::A : Coupler::Class::S;
        int r = id - class_base(c.cls);
        c.mu = (r >> 4) & 1;
        c.nu = (r >> 3) & 1;
        c.sigma = (r >> 2) & 1;
        c.delta = (r >> 1) & 1;
        c.eps = r & 1;
    }
    return c;
}

int coupler_indicator(const Coupler& c, int a, int a1, int a2, int x1, int x2) {
    switch (c.cls) {
        case Coupler::Class::D:
            // The class condition x1=x2 leaves the common input free; the
            // wired box is input-independent for NS boxes, so input 0 is
            // used as the single admitted pattern.
            return x1 == 0 && x2 == 0 && a == c.mu;
        case Coupler::Class::O:
            return x1 == c.mu && x2 == c.mu && a == ((c.nu ? a2 : a1) ^ c.sigma);
        case Coupler::Class::X:
            return x1 == c.mu && x2 == c.nu && a == (a1 ^ a2 ^ c.sigma);
        case Coupler::Class::A:
            return x1 == c.mu && x2 == c.nu && a == (((a1 ^ c.sigma) & (a2 ^ c.delta)) ^ c.eps);
        case Coupler::Class::S: {
            int xf = c.mu ? x2 : x1;  // input of the box queried first
            int xs = c.mu ? x1 : x2;
            int af = c.mu ? a2 : a1;
            int as = c.mu ? a1 : a2;
            return xf == c.nu && xs == (af ^ c.sigma) && a == (as ^ (c.delta & af) ^ c.eps);
        }
    }
    return 0;
}

CouplerMap compile_coupler(const Coupler& c) {
    CouplerMap m;
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
            CouplerMap::Entry e{};
            switch (c.cls) {
                case Coupler::Class::D:
                    e = {0, 0, c.mu};
                    break;
                case Coupler::Class::O:
                    e = {c.mu, c.mu, static_cast<std::uint8_t>((c.nu ? a2 : a1) ^ c.sigma)};
                    break;
                case Coupler::Class::X:
                    e = {c.mu, c.nu, static_cast<std::uint8_t>(a1 ^ a2 ^ c.sigma)};
                    break;
                case Coupler::Class::A:
                    e = {c.mu, c.nu,
                         static_cast<std::uint8_t>(((a1 ^ c.sigma) & (a2 ^ c.delta)) ^ c.eps)};
                    break;
                case Coupler::Class::S: {
                    int af = c.mu ? a2 : a1;
                    int as = c.mu ? a1 : a2;
                    auto xs = static_cast<std::uint8_t>(af ^ c.sigma);
                    auto out = static_cast<std::uint8_t>(as ^ (c.delta & af) ^ c.eps);
                    e = c.mu ? CouplerMap::Entry{xs, c.nu, out} : CouplerMap::Entry{c.nu, xs, out};
                    break;
                }
            }
            m.at[a1][a2] = e;
        }
    return m;
}

std::string coupler_str(const Coupler& c) {
    auto bits = [](std::initializer_list<int> vals) {
        std::string s;
        for (int v : vals) {
            if (!s.empty()) s += ',';
            s += static_cast<char>('0' + v);
        }
        return s;
    };
    switch (c.cls) {
        case Coupler::Class::D: return "D:" + bits({c.mu});
        case Coupler::Class::O: return "O:" + bits({c.mu, c.nu, c.sigma});
        case Coupler::Class::X: return "X:" + bits({c.mu, c.nu, c.sigma});
        case Coupler::Class::A: return "A:" + bits({c.mu, c.nu, c.sigma, c.delta, c.eps});
        case Coupler::Class::S: return "S:" + bits({c.mu, c.nu, c.sigma, c.delta, c.eps});
    }
    return {};
}

std::optional<Coupler> parse_coupler(std::string_view s) {
    if (s.size() < 3 || s[1] != ':') return std::nullopt;
    Coupler c;
    int nparams = 0;
    switch (s[0]) {
        case 'D': c.cls = Coupler::Class::D; nparams = 1; break;
        case 'O': c.cls = Coupler::Class::O; nparams = 3; break;
        case 'X': c.cls = Coupler::Class::X; nparams = 3; break;
        case 'A': c.cls = Coupler::Class::A; nparams = 5; break;
        case 'S': c.cls = Coupler::Class::S; nparams = 5; break;
        default: return std::nullopt;
    }
    std::uint8_t vals[5] = {0, 0, 0, 0, 0};
    int n = 0;
    for (size_t i = 2; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == ',') continue;
        if ((ch != '0' && ch != '1') || n >= nparams) return std::nullopt;
        vals[n++] = static_cast<std::uint8_t>(ch - '0');
    }
    if (n != nparams) return std::nullopt;
    c.mu = vals[0];
    if (nparams >= 3) {
        c.nu = vals[1];
        c.sigma = vals[2];
    }
    if (nparams == 5) {
        c.delta = vals[3];
        c.eps = vals[4];
    }
    return c;
}

}  // namespace nlsd

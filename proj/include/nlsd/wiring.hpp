#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlsd/box.hpp"
#include "nlsd/coupler.hpp"

namespace nlsd {

inline constexpr std::uint64_t kTotalWirings = 82ull * 82ull * 82ull * 82ull;  // 45,212,176

// The coupler a party applies for each value of its final input.
struct PartyWiring {
    int at0{};  // coupler id used when the final input is 0
    int at1{};
};

// A full two-party wiring of two boxes: one coupler per party per input.
// Ids are big-endian base 82 over (alice.at0, alice.at1, bob.at0, bob.at1).
struct Wiring {
    PartyWiring alice, bob;

    std::uint64_t id() const {
        return ((static_cast<std::uint64_t>(alice.at0) * 82 + alice.at1) * 82 + bob.at0) * 82 +
               bob.at1;
    }
    static Wiring from_id(std::uint64_t id);

    int coupler_at(bool bob_side, int input) const {
        const PartyWiring& pw = bob_side ? bob : alice;
        return input ? pw.at1 : pw.at0;
    }

    friend bool operator==(const Wiring& a, const Wiring& b) {
        return a.alice.at0 == b.alice.at0 && a.alice.at1 == b.alice.at1 &&
               a.bob.at0 == b.bob.at0 && a.bob.at1 == b.bob.at1;
    }
};

// One (x,y) output block of the wired box, as governed by the two couplers
// the parties apply at those inputs. Entries in (a,b) = 00,01,10,11 order.
template <class S>
std::array<S, 4> wired_block_t(const CouplerMap& ca, const CouplerMap& cb,
                               const std::array<S, 16>& p, const std::array<S, 16>& q) {
    std::array<S, 4> r{};
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2) {
            const auto& ea = ca.at[a1][a2];
            for (int b1 = 0; b1 < 2; ++b1)
                for (int b2 = 0; b2 < 2; ++b2) {
                    const auto& eb = cb.at[b1][b2];
                    r[2 * ea.a + eb.a] += p[Box::entry_index(a1, b1, ea.x1, eb.x1)] *
                                          q[Box::entry_index(a2, b2, ea.x2, eb.x2)];
                }
        }
    return r;
}

std::array<Rat, 4> wired_block(const Coupler& ca, const Coupler& cb, const Box& p, const Box& q);

// r(ab|xy) = sum chi_x(a,a1,a2,x1,x2) chi_y(b,b1,b2,y1,y2) p(a1b1|x1y1) q(a2b2|x2y2).
// For non-signalling p,q the result is a valid non-signalling box; the map
// is bilinear in (p,q).
template <class S>
std::array<S, 16> apply_wiring_t(const Wiring& w, const std::array<S, 16>& p,
                                 const std::array<S, 16>& q) {
    std::array<CouplerMap, 2> ca = {compile_coupler(coupler_from_id(w.alice.at0)),
                                    compile_coupler(coupler_from_id(w.alice.at1))};
    std::array<CouplerMap, 2> cb = {compile_coupler(coupler_from_id(w.bob.at0)),
                                    compile_coupler(coupler_from_id(w.bob.at1))};
    std::array<S, 16> out{};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            auto blk = wired_block_t(ca[x], cb[y], p, q);
            for (int k = 0; k < 4; ++k) out[4 * (2 * x + y) + k] = blk[k];
        }
    return out;
}

Box apply_wiring(const Wiring& w, const Box& p, const Box& q);

// Ascending-id stream over [lo, hi).
class WiringRange {
public:
    WiringRange(std::uint64_t lo, std::uint64_t hi);

    class iterator {
    public:
        iterator(std::uint64_t id) : id_(id) {}
        Wiring operator*() const { return Wiring::from_id(id_); }
        iterator& operator++() {
            ++id_;
            return *this;
        }
        bool operator!=(const iterator& o) const { return id_ != o.id_; }
        std::uint64_t id() const { return id_; }

    private:
        std::uint64_t id_;
    };

    iterator begin() const { return iterator(lo_); }
    iterator end() const { return iterator(hi_); }
    std::uint64_t size() const { return hi_ - lo_; }

private:
    std::uint64_t lo_, hi_;
};

// Named strategies: "table3:L1".."table3:L8" for the one-dimensional faces
// and "table4:L1L2".."table4:L7L8" for the distillable two-dimensional ones.
const std::vector<std::pair<std::string, Wiring>>& wiring_presets();

// Accepts a decimal id, a preset name, or the explicit form
// "A0=X:0,0,0;A1=S:0,1,1,1,0;B0=X:0,0,0;B1=S:0,1,1,1,0".
std::optional<Wiring> parse_wiring(std::string_view s);
std::string wiring_str(const Wiring& w);

}  // namespace nlsd

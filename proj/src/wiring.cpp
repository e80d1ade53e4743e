#include "nlsd/wiring.hpp"

#include <stdexcept>

namespace nlsd {

Wiring Wiring::from_id(std::uint64_t id) {
    if (id >= kTotalWirings) throw std::out_of_range("Wiring::from_id: id out of range");
    Wiring w;
    w.bob.at1 = static_cast<int>(id % 82);
    id /= 82;
    w.bob.at0 = static_cast<int>(id % 82);
    id /= 82;
    w.alice.at1 = static_cast<int>(id % 82);
    w.alice.at0 = static_cast<int>(id / 82);
    return w;
}

std::array<Rat, 4> wired_block(const Coupler& ca, const Coupler& cb, const Box& p, const Box& q) {
    return wired_block_t(compile_coupler(ca), compile_coupler(cb), p.e, q.e);
}

Box apply_wiring(const Wiring& w, const Box& p, const Box& q) {
    return Box{apply_wiring_t<Rat>(w, p.e, q.e)};
}

WiringRange::WiringRange(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
    if (lo > hi || hi > kTotalWirings)
        throw std::out_of_range("WiringRange: bad interval");
}

namespace {

Wiring preset_from(const char* a0, const char* a1, const char* b0, const char* b1) {
    auto cid = [](const char* s) {
        auto c = parse_coupler(s);
        if (!c) throw std::logic_error("bad preset coupler");
        return coupler_id(*c);
    };
    return Wiring{{cid(a0), cid(a1)}, {cid(b0), cid(b1)}};
}

}  // namespace

const std::vector<std::pair<std::string, Wiring>>& wiring_presets() {
    static const std::vector<std::pair<std::string, Wiring>> presets = [] {
        std::vector<std::pair<std::string, Wiring>> v;
        // Single-vertex strategies (one per 1D face).
        v.emplace_back("table3:L1", preset_from("S:0,0,0,0,0", "X:1,1,1", "S:0,0,1,0,0", "X:1,1,0"));
        v.emplace_back("table3:L2", preset_from("S:0,0,1,0,0", "X:1,1,0", "S:0,0,0,0,0", "X:1,1,1"));
        v.emplace_back("table3:L3", preset_from("S:0,0,0,1,0", "X:1,1,0", "X:0,0,0", "S:0,1,0,0,0"));
        v.emplace_back("table3:L4", preset_from("S:0,0,1,1,1", "X:1,1,1", "X:0,0,1", "S:0,1,1,0,0"));
        v.emplace_back("table3:L5", preset_from("X:0,0,1", "S:0,1,1,0,0", "S:0,0,1,1,1", "X:1,1,1"));
        v.emplace_back("table3:L6", preset_from("X:0,0,0", "S:0,1,0,0,0", "S:0,0,0,1,0", "X:1,1,0"));
        v.emplace_back("table3:L7", preset_from("X:0,0,0", "S:0,1,1,1,0", "X:0,0,0", "S:0,1,1,1,0"));
        v.emplace_back("table3:L8", preset_from("X:0,0,1", "S:0,1,0,1,1", "X:0,0,1", "S:0,1,0,1,1"));
        // Whole-face strategies for the twelve distillable 2D faces.
        v.emplace_back("table4:L1L2", preset_from("S:0,0,0,0,0", "X:1,1,1", "S:0,0,1,0,0", "X:1,1,0"));
        v.emplace_back("table4:L1L3", preset_from("S:0,0,0,0,0", "X:1,1,0", "S:0,1,1,0,0", "S:0,0,1,0,0"));
        v.emplace_back("table4:L1L5", preset_from("S:0,0,0,0,0", "S:0,1,0,0,0", "S:0,0,1,0,0", "X:1,1,0"));
        v.emplace_back("table4:L2L4", preset_from("S:0,0,1,0,0", "X:1,1,0", "S:0,0,0,0,0", "S:0,1,0,0,0"));
        v.emplace_back("table4:L2L6", preset_from("S:0,0,1,0,0", "S:0,1,1,0,0", "S:0,0,0,0,0", "X:1,1,1"));
        v.emplace_back("table4:L3L4", preset_from("S:0,0,0,1,0", "X:1,1,0", "X:0,0,0", "S:0,1,0,0,0"));
        v.emplace_back("table4:L3L8", preset_from("S:0,0,0,1,0", "S:0,1,1,1,0", "X:0,0,0", "S:0,1,0,0,0"));
        v.emplace_back("table4:L4L7", preset_from("S:0,0,1,1,1", "S:0,1,0,1,1", "X:0,0,1", "S:0,1,1,0,0"));
        v.emplace_back("table4:L5L6", preset_from("X:0,0,0", "S:0,1,1,0,1", "S:0,0,1,1,0", "X:1,1,0"));
        v.emplace_back("table4:L5L7", preset_from("X:0,0,0", "S:0,1,1,0,0", "S:0,1,0,1,0", "S:0,0,1,1,0"));
        v.emplace_back("table4:L6L8", preset_from("X:0,0,0", "S:0,1,0,0,0", "S:0,0,0,1,0", "S:0,1,1,1,0"));
        v.emplace_back("table4:L7L8", preset_from("X:0,0,0", "S:0,1,1,1,0", "X:0,0,0", "S:0,1,1,1,0"));
        return v;
    }();
    return presets;
}

std::optional<Wiring> parse_wiring(std::string_view s) {
    if (s.empty()) return std::nullopt;

    bool all_digits = true;
    for (char ch : s)
        if (ch < '0' || ch > '9') {
            all_digits = false;
            break;
        }
    if (all_digits) {
        std::uint64_t id = 0;
        for (char ch : s) {
            id = id * 10 + static_cast<std::uint64_t>(ch - '0');
            if (id >= kTotalWirings) return std::nullopt;
        }
        return Wiring::from_id(id);
    }

    for (const auto& [name, w] : wiring_presets())
        if (name == s) return w;

    // Explicit form: four ;-separated KEY=COUPLER fields.
    int seen = 0;
    Wiring w;
    size_t i = 0;
    while (i <= s.size()) {
        size_t j = s.find(';', i);
        if (j == std::string_view::npos) j = s.size();
        std::string_view field = s.substr(i, j - i);
        size_t eq = field.find('=');
        if (eq == std::string_view::npos) return std::nullopt;
        std::string_view key = field.substr(0, eq);
        auto c = parse_coupler(field.substr(eq + 1));
        if (!c) return std::nullopt;
        int cid = coupler_id(*c);
        if (key == "A0") w.alice.at0 = cid;
        else if (key == "A1") w.alice.at1 = cid;
        else if (key == "B0") w.bob.at0 = cid;
        else if (key == "B1") w.bob.at1 = cid;
        else return std::nullopt;
        ++seen;
        if (j == s.size()) break;
        i = j + 1;
    }
    if (seen != 4) return std::nullopt;
    return w;
}

std::string wiring_str(const Wiring& w) {
    return "A0=" + coupler_str(coupler_from_id(w.alice.at0)) +
           ";A1=" + coupler_str(coupler_from_id(w.alice.at1)) +
           ";B0=" + coupler_str(coupler_from_id(w.bob.at0)) +
           ";B1=" + coupler_str(coupler_from_id(w.bob.at1));
}

}  // namespace nlsd

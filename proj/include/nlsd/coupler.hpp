#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace nlsd {

inline constexpr int kCouplerCount = 82;

// One of the 82 extremal deterministic rules for composing the two local
// box outcomes of one party into a single outcome. Classes:
//   D(mu):              both boxes queried with input 0, output the constant mu
//   O(mu,nu,sigma):     both boxes queried with mu, output = a_{nu+1} ^ sigma
//   X(mu,nu,sigma):     inputs (mu,nu), output = a1 ^ a2 ^ sigma
//   A(mu,nu,sigma,delta,eps): inputs (mu,nu), output = (a1^sigma)(a2^delta) ^ eps
//   S(mu,nu,sigma,delta,eps): box mu+1 queried first with nu, the other with
//       (first outcome ^ sigma); output = second outcome ^ delta*first ^ eps
struct Coupler {
    enum class Class : std::uint8_t { D, O, X, A, S };
    Class cls{Class::D};
    std::uint8_t mu{}, nu{}, sigma{}, delta{}, eps{};
};

// Dense ids: D 0..1, O 2..9, X 10..17, A 18..49, S 50..81, parameters in
// lexicographic order within each class.
int coupler_id(const Coupler& c);
Coupler coupler_from_id(int id);

// The indicator chi(a, a1, a2, x1, x2): 1 iff the coupler admits the input
// pattern (x1,x2) for outcomes (a1,a2) and produces output a. For every
// (a1,a2) exactly one (x1,x2,a) is admitted.
int coupler_indicator(const Coupler& c, int a, int a1, int a2, int x1, int x2);

// The coupler as an explicit map (a1,a2) -> admitted inputs and output.
struct CouplerMap {
    struct Entry {
        std::uint8_t x1, x2, a;
    };
    std::array<std::array<Entry, 2>, 2> at{};  // at[a1][a2]
};
CouplerMap compile_coupler(const Coupler& c);

// "X:0,0,0", "S:0,1,1,1,0", "D:1", ...
std::string coupler_str(const Coupler& c);
std::optional<Coupler> parse_coupler(std::string_view s);

}  // namespace nlsd

// Waiting-time fields and Bernoulli occupation profiles.
//
// A WaitingField is the rectangular array of nonnegative waiting times
// w_{i,j} on the grid (0..nx, 0..ny). Boundary rows and columns carry
// their own exponential means:
//
//   one-sided:  w_{i,j} ~ Exp(1) bulk, Exp(1/eta) on the column i=0 (j>=1),
//               0 on the row j=0.
//   two-sided:  Exp(1/pi) on the row j=0 (i>=1), Exp(1/eta) on the column
//               i=0 (j>=1), Exp(1) in the bulk, 0 at the origin.
//
// The two-sided field also has an exact-offset variant in which a random
// prefix of each boundary is zeroed according to the occupation runs next
// to the origin; this is the finite-size-exact particle correspondence.
// The plain variant keeps full boundary rows, which matches the simplified
// model whose large time statistics are the same.
//
// Exp(m) throughout denotes mean m. Every cell value is a pure function of
// (params, seed, i, j), so fields may be regenerated cell-wise in any order.

#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "kpzlab/rng.hpp"

namespace kpzlab {

enum class BoundaryKind { OneSided, TwoSided };

struct BoundaryParams {
    double eta = 1.0;    // left-column mean is 1/eta
    double pi = 1.0;     // bottom-row mean is 1/pi (two-sided only)
    BoundaryKind kind = BoundaryKind::OneSided;
    bool exact_offsets = false;  // geometric initial offsets (two-sided)

    void validate() const {
        if (!(eta > 0.0 && eta <= 1.0))
            throw std::invalid_argument("BoundaryParams: eta must be in (0,1]");
        if (kind == BoundaryKind::TwoSided && !(pi > 0.0 && pi <= 1.0))
            throw std::invalid_argument("BoundaryParams: pi must be in (0,1]");
    }

    static BoundaryParams one_sided(double eta) {
        BoundaryParams p;
        p.eta = eta;
        p.kind = BoundaryKind::OneSided;
        p.validate();
        return p;
    }
    static BoundaryParams two_sided(double eta, double pi, bool exact_offsets = false) {
        BoundaryParams p;
        p.eta = eta;
        p.pi = pi;
        p.kind = BoundaryKind::TwoSided;
        p.exact_offsets = exact_offsets;
        p.validate();
        return p;
    }
};

namespace detail {

// Fixed per-cell counter codes. High bit ranges are reserved for the
// geometric offset draws so cell draws never collide with them.
inline std::uint64_t cell_code(int i, int j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(j)) << 32) |
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(i));
}
inline constexpr std::uint64_t kOffsetBottomCode = ~std::uint64_t{0};
inline constexpr std::uint64_t kOffsetLeftCode = ~std::uint64_t{0} - 1;
inline constexpr std::uint64_t kOffsetLeftRunCode = ~std::uint64_t{0} - 2;

// Entry offsets for the exact finite-size correspondence. The zero prefixes
// encode the initial occupation next to the origin:
//   bottom: the run of empty sites 1, 2, ... (length R, P(R >= i) = pi^i);
//   left:   the run of occupied sites 0, -1, -2, ... (length C,
//           P(C >= 1) = 1 - pi and P(C >= j+1 | C >= j) = eta for j >= 1).
// The runs live on disjoint site sets and are independent. A sentinel -1
// marks an infinite run (whole boundary zero).
struct ExactOffsets {
    std::int64_t bottom = 0;  // w_{i,0} = 0 for i <= bottom
    std::int64_t left = 0;    // w_{0,j} = 0 for j <= left
};

inline ExactOffsets draw_offsets(const BoundaryParams& p, const CounterRng& rng) {
    ExactOffsets off;
    if (!p.exact_offsets) return off;
    const double rho_plus = 1.0 - p.pi;
    const double rho_minus = p.eta;
    if (rho_plus <= 0.0) {
        off.bottom = -1;  // no particle ever enters from the right of the origin
    } else if (rho_plus >= 1.0) {
        off.bottom = 0;
    } else {
        const double u = rng.unit_at(kOffsetBottomCode);
        off.bottom = static_cast<std::int64_t>(std::floor(std::log(u) / std::log(p.pi)));
    }
    if (rng.unit_at(kOffsetLeftCode) <= rho_plus) {
        if (rho_minus >= 1.0) {
            off.left = -1;  // infinite occupied run
        } else {
            const double u = rng.unit_at(kOffsetLeftRunCode);
            off.left = 1 + static_cast<std::int64_t>(std::floor(std::log(u) / std::log(rho_minus)));
        }
    } else {
        off.left = 0;
    }
    return off;
}

// Waiting time of cell (i,j) for the given parameters. Zero cells consume
// no randomness.
inline double cell_weight(const BoundaryParams& p, const ExactOffsets& off,
                          const CounterRng& rng, int i, int j) {
    if (i == 0 && j == 0) return 0.0;
    if (j == 0) {
        if (p.kind == BoundaryKind::OneSided) return 0.0;
        if (p.exact_offsets && (off.bottom < 0 || i <= off.bottom)) return 0.0;
        return rng.exponential_at(cell_code(i, j), 1.0 / p.pi);
    }
    if (i == 0) {
        if (p.exact_offsets && (off.left < 0 || j <= off.left)) return 0.0;
        return rng.exponential_at(cell_code(i, j), 1.0 / p.eta);
    }
    return rng.exponential_at(cell_code(i, j), 1.0);
}

} // namespace detail

struct WaitingField {
    int nx = 0, ny = 0;
    std::vector<double> values;  // row-major, index j*(nx+1)+i
    BoundaryParams params;
    std::uint64_t seed = 0;

    double& at(int i, int j) { return values[static_cast<std::size_t>(j) * (nx + 1) + i]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * (nx + 1) + i]; }
};

inline WaitingField generate_field(const BoundaryParams& params, int nx, int ny,
                                   std::uint64_t seed) {
    params.validate();
    if (nx < 0 || ny < 0) throw std::invalid_argument("generate_field: negative dimensions");
    WaitingField f;
    f.nx = nx;
    f.ny = ny;
    f.params = params;
    f.seed = seed;
    f.values.resize(static_cast<std::size_t>(nx + 1) * (ny + 1));
    const CounterRng rng(seed);
    const auto off = detail::draw_offsets(params, rng);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            f.at(i, j) = detail::cell_weight(params, off, rng, i, j);
    return f;
}

inline WaitingField generate_one_sided(double eta, int nx, int ny, std::uint64_t seed) {
    return generate_field(BoundaryParams::one_sided(eta), nx, ny, seed);
}

inline WaitingField generate_two_sided(double eta, double pi, int nx, int ny, std::uint64_t seed,
                                       bool exact_offsets = false) {
    return generate_field(BoundaryParams::two_sided(eta, pi, exact_offsets), nx, ny, seed);
}

// Independent Bernoulli occupation over the window [lo, hi], density
// rho_minus at sites < 0 and rho_plus at sites >= 0. The degenerate step
// case (1, 0) is allowed.
struct OccupationWindow {
    int lo = 0, hi = -1;
    std::vector<std::uint8_t> occ;

    int size() const { return hi - lo + 1; }
    bool occupied(int site) const { return occ[static_cast<std::size_t>(site - lo)] != 0; }
};

inline OccupationWindow generate_bernoulli_profile(double rho_minus, double rho_plus, int lo,
                                                   int hi, std::uint64_t seed) {
    if (!(rho_minus >= 0.0 && rho_minus <= 1.0 && rho_plus >= 0.0 && rho_plus <= 1.0))
        throw std::invalid_argument("bernoulli_profile: densities must lie in [0,1]");
    if (hi < lo) throw std::invalid_argument("bernoulli_profile: empty window");
    OccupationWindow w;
    w.lo = lo;
    w.hi = hi;
    w.occ.resize(static_cast<std::size_t>(hi - lo + 1));
    const CounterRng rng(seed);
    for (int site = lo; site <= hi; ++site) {
        const double rho = site < 0 ? rho_minus : rho_plus;
        const double u = rng.unit_at(static_cast<std::uint64_t>(static_cast<std::uint32_t>(site)));
        w.occ[static_cast<std::size_t>(site - lo)] = (u <= rho) ? 1 : 0;
    }
    return w;
}

// Debug dump, header i,j,w. Not a stable format.
inline void write_field_csv(const WaitingField& f, std::ostream& os) {
    os << "i,j,w\n";
    for (int j = 0; j <= f.ny; ++j)
        for (int i = 0; i <= f.nx; ++i) os << i << ',' << j << ',' << f.at(i, j) << '\n';
}

} // namespace kpzlab

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thurston/cover.hpp"

namespace thurston {

struct GeneratorConfig {
    std::uint64_t seed = 0;
    int word_length_bound = 16; // cap on any emitted restriction word
    int count = 1;
};

// Random postcritically finite instances built by applying honesty
// preserving moves to a fixed table of hand-solved base presentations.
// Deterministic per config, platform independent, and every output
// passes validate_presentation with clean restriction products.
std::vector<CoverPresentation> generate_random_cubic_two_fixed(const GeneratorConfig& cfg);
std::vector<CoverPresentation> generate_random_quadratic(const GeneratorConfig& cfg);

// The unrandomized bases themselves, for tests and corpus plumbing.
const std::vector<CoverPresentation>& cubic_two_fixed_bases();
const std::vector<CoverPresentation>& quadratic_bases();

// Rewrites every restriction row through a sheet-indexed conjugator
// vector h: the row over sheet k becomes h[sigma(k)] r h[k]^(-1). Acting
// on all fibers at once conjugates the whole wreath image, so validity
// and all restriction-product classes are preserved.
CoverPresentation apply_gauge(const CoverPresentation& P, const std::vector<Word>& h);

// Composes with the twist about the round curve enclosing marked points
// a..b (1 <= a < b <= n-1): generators in the block are conjugated by
// c = g_a ... g_b (dir > 0) or its inverse. The product over the block is
// unchanged, so the derived fiber and everything outside the block stay
// put while the block fibers move by a wreath conjugation.
CoverPresentation apply_block_twist(const CoverPresentation& P, int a, int b, int dir);

// Renames the sheets by rho; a pure change of coordinates.
CoverPresentation apply_sheet_relabel(const CoverPresentation& P, const Permutation& rho);

namespace detail {

// Small deterministic generator so emitted corpora never depend on the
// platform's distribution implementations.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, m); m > 0
    std::uint64_t below(std::uint64_t m) {
        std::uint64_t limit = ~0ULL - (~0ULL % m);
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % m;
    }
};

// True when validate_presentation passes and every restriction product
// along every fiber cycle lands in the class the assignment table
// demands. Generator outputs satisfy this unconditionally.
bool honest(const CoverPresentation& P);

} // namespace detail

} // namespace thurston

#pragma once

// Diagram generators for property and acceptance tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "rcc/codec.hpp"
#include "rcc/diagram.hpp"

namespace rcc::testing {

/// One braid letter: sigma_{gen} (gen >= 1) to the power `sign`.
struct BraidLetter {
    int gen = 1;
    int sign = 1;
};

/// Closure of a braid on `strands` strands, strands running upward. A positive
/// letter puts the strand coming from the left over. Every generator must occur
/// for the closure to be connected.
inline OrientedPDCode braid_closure(int strands, const std::vector<BraidLetter>& word) {
    std::vector<int> cur(static_cast<std::size_t>(strands));
    std::iota(cur.begin(), cur.end(), 1);
    int next = strands + 1;
    std::vector<PDCrossing> xs;
    for (const auto& letter : word) {
        const auto p = static_cast<std::size_t>(letter.gen - 1);
        const int a = cur[p], b = cur[p + 1];
        const int a_out = next++, b_out = next++;
        PDCrossing x;
        if (letter.sign > 0) {
            x.ends = {b, a_out, b_out, a};
            x.over_in_slot = 3;
        } else {
            x.ends = {a, b, a_out, b_out};
            x.over_in_slot = 1;
        }
        xs.push_back(x);
        cur[p] = b_out;
        cur[p + 1] = a_out;
    }
    // Close up: the label leaving the top at position p is the one entering at the bottom.
    std::vector<int> alias(static_cast<std::size_t>(next), 0);
    std::iota(alias.begin(), alias.end(), 0);
    for (int p = 0; p < strands; ++p)
        alias[static_cast<std::size_t>(cur[static_cast<std::size_t>(p)])] = p + 1;
    std::vector<int> compact(static_cast<std::size_t>(next), 0);
    int label = 1;
    for (auto& x : xs)
        for (int& e : x.ends) {
            e = alias[static_cast<std::size_t>(e)];
            if (compact[static_cast<std::size_t>(e)] == 0)
                compact[static_cast<std::size_t>(e)] = label++;
        }
    for (auto& x : xs)
        for (int& e : x.ends)
            e = compact[static_cast<std::size_t>(e)];
    return make_code(std::move(xs));
}

/// Inserts a Reidemeister-I curl on arc `label`. `variant` 0..3 picks the side
/// of the arc and whether the strand enters under or over.
inline OrientedPDCode add_curl(const OrientedPDCode& code, int label, int variant) {
    auto xs = code.crossings;
    const int loop = static_cast<int>(2 * xs.size()) + 1;
    const int rest = loop + 1;
    // The old arc now ends at the curl; what used to be its head receives `rest`.
    bool moved = false;
    for (auto& x : xs) {
        for (int s = 0; s < 4 && !moved; ++s)
            if (x.ends[static_cast<std::size_t>(s)] == label && (s == 0 || s == x.over_in_slot)) {
                x.ends[static_cast<std::size_t>(s)] = rest;
                moved = true;
            }
    }
    if (!moved)
        throw std::invalid_argument("label not found");
    PDCrossing n;
    switch (variant & 3) {
    case 0: n = {{label, loop, loop, rest}, 1}; break;
    case 1: n = {{label, rest, loop, loop}, 3}; break;
    case 2: n = {{loop, label, rest, loop}, 1}; break;
    default: n = {{loop, loop, rest, label}, 3}; break;
    }
    xs.push_back(n);
    return make_code(std::move(xs));
}

/// Shuffles crossing order and permutes arc labels; the diagram is unchanged.
template <class Rng>
OrientedPDCode scramble(const OrientedPDCode& code, Rng& rng) {
    auto xs = code.crossings;
    std::shuffle(xs.begin(), xs.end(), rng);
    std::vector<int> perm(2 * xs.size());
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& x : xs)
        for (int& e : x.ends)
            e = perm[static_cast<std::size_t>(e - 1)];
    return make_code(std::move(xs));
}

/// Random connected diagram with at most `max_crossings` crossings: a braid
/// closure on up to 4 strands with random signs, plus occasional curls.
template <class Rng>
OrientedPDCode random_code(Rng& rng, int max_crossings) {
    std::uniform_int_distribution<int> coin(0, 1);
    const int strands = std::uniform_int_distribution<int>(1, std::min(4, std::max(1, max_crossings)))(rng);
    std::vector<BraidLetter> word;
    for (int g = 1; g < strands; ++g)
        word.push_back({g, coin(rng) ? 1 : -1});
    const int budget = std::max(0, max_crossings - static_cast<int>(word.size()));
    const int extra = std::uniform_int_distribution<int>(strands == 1 ? 0 : 0, budget)(rng);
    int curls = 0;
    for (int i = 0; i < extra; ++i) {
        if (strands > 1 && coin(rng)) {
            word.push_back({std::uniform_int_distribution<int>(1, strands - 1)(rng), coin(rng) ? 1 : -1});
        } else {
            ++curls;
        }
    }
    std::shuffle(word.begin(), word.end(), rng);
    OrientedPDCode code = strands == 1 ? parse_pd("X(1,2,2,1)") : braid_closure(strands, word);
    if (strands == 1 && curls > 0)
        --curls;
    for (int i = 0; i < curls; ++i) {
        const int arcs = static_cast<int>(2 * code.size());
        code = add_curl(code, std::uniform_int_distribution<int>(1, arcs)(rng),
                        std::uniform_int_distribution<int>(0, 3)(rng));
    }
    return scramble(code, rng);
}

} // namespace rcc::testing

#pragma once

// Deterministic random corpus: separable bivariate polynomials over
// F_2/F_3/F_4 with d,h in {1,2,3} possessing a power-series root, stratified
// over every (q,d,h) combination.

#include <random>

#include "helpers.hpp"

namespace christol::testing {

struct CorpusInstance {
    const FieldCtx* F;
    BPoly P;
    std::vector<Fq> prefix;
    int d, h, r;
};

inline std::vector<CorpusInstance> build_corpus(int per_stratum = 8) {
    std::vector<CorpusInstance> out;
    for (std::uint32_t q : {2u, 3u, 4u}) {
        const FieldCtx& F = field_q(q);
        for (int d = 1; d <= 3; ++d)
            for (int h = 1; h <= 3; ++h) {
                std::mt19937 rng(900000u + q * 10000u + d * 100u + h);
                std::uniform_int_distribution<std::uint32_t> coeff(0, q - 1);
                int kept = 0;
                while (kept < per_stratum) {
                    BPoly P(F);
                    for (int i = 0; i <= h; ++i)
                        for (int j = 0; j <= d; ++j)
                            P.add_term(i, j, F.from_packed(coeff(rng)));
                    if (P.is_zero() || P.deg_x() != h || P.deg_y() != d) continue;
                    try {
                        MinimalData md = degree_height(P);
                        int r = resultant_order(md);
                        auto prefixes = valid_root_prefixes(md);
                        if (prefixes.empty()) continue; // no power-series root
                        out.push_back(CorpusInstance{&F, P, prefixes.front(), md.d, md.h, r});
                        ++kept;
                    } catch (const error&) {
                        // inseparable sample; draw again
                    }
                }
            }
    }
    return out;
}

} // namespace christol::testing

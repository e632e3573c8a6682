#include <cmath>
#include <cstddef>
#include <vector>

#include <gtest/gtest.h>

#include "framediag/error.hpp"
#include "framediag/linalg.hpp"
#include "framediag/paper_examples.hpp"
#include "framediag/random.hpp"
#include "framediag/realize.hpp"
#include "framediag/sequence.hpp"
#include "oracle.hpp"

namespace fd = framediag;
using fd::complex;

TEST(Weights, EvaluateRules) {
    EXPECT_EQ(fd::evaluate(fd::weight::InverseIndex{}, 4), complex(0.25));
    EXPECT_EQ(fd::evaluate(fd::weight::Index{}, 7), complex(7.0));
    EXPECT_EQ(fd::evaluate(fd::weight::Constant{complex{0.0, 2.0}}, 9), complex(0.0, 2.0));
    // Geometric powers are exact for a power-of-two ratio.
    EXPECT_EQ(fd::evaluate(fd::weight::Geometric{0.5}, 10), complex(std::ldexp(1.0, -10)));
    EXPECT_EQ(fd::evaluate(fd::weight::Table{{1.0, 2.0}}, 2), complex(2.0));
    EXPECT_THROW(fd::evaluate(fd::weight::Table{{1.0, 2.0}}, 3), fd::invalid_spec);
    EXPECT_THROW(fd::evaluate(fd::weight::Geometric{1e10}, 40), fd::non_finite_value);
}

TEST(Pattern, InterleavesStreamsAfterPrefix) {
    const fd::Pattern p{{{fd::Term{3, 2.0}}},
                        {fd::PatternStream{1, 0, fd::weight::Geometric{0.5}, 0},
                         fd::PatternStream{2, 1, fd::weight::Constant{1.0}, 0}}};
    EXPECT_EQ(p.element(0), (fd::SparseVector{fd::Term{3, 2.0}}));
    EXPECT_EQ(p.element(1), (fd::SparseVector{fd::Term{1, 0.5}}));
    EXPECT_EQ(p.element(2), (fd::SparseVector{fd::Term{2, 1.0}}));
    EXPECT_EQ(p.element(3), (fd::SparseVector{fd::Term{1, 0.25}}));
    EXPECT_EQ(p.element(4), (fd::SparseVector{fd::Term{3, 1.0}}));
    const fd::Pattern finite{{{fd::Term{1, 1.0}}}, {}};
    EXPECT_FALSE(finite.infinite());
    EXPECT_THROW(finite.element(1), fd::invalid_spec);
}

TEST(Pattern, RealizedDimensionIsHighestIndex) {
    const fd::Pattern p{{}, {fd::PatternStream{2, 3, fd::weight::Constant{1.0}, 0}}};
    const auto s = fd::realize_pattern(p, 4);
    EXPECT_EQ(s.dim, 11u);
    EXPECT_EQ(s.count(), 4u);
    const auto dense = s.to_dense();
    EXPECT_EQ(dense.columns()(10, 3), complex(1.0));
    EXPECT_THROW(s.to_dense(10), fd::too_large);
}

TEST(Examples, TruncationShapes) {
    for (fd::ExampleId id : fd::all_examples) {
        const auto entry = fd::example_entry(id);
        const std::size_t n = 12;
        auto [f, g] = fd::paper_example_terms(id, n);
        EXPECT_EQ(f.dim, g.dim) << fd::to_string(id);
        EXPECT_EQ(std::make_pair(f.count(), g.count()), entry.counts(n)) << fd::to_string(id);
        EXPECT_THROW(fd::paper_example_terms(id, entry.min_n - 1), fd::invalid_spec) << fd::to_string(id);
    }
    auto [f, g] = fd::paper_example(fd::ExampleId::blocked, 6);
    EXPECT_EQ(f.count(), 4u);
    EXPECT_EQ(g.count(), 6u);
    EXPECT_EQ(f.dim(), 3u);
}

TEST(Examples, ExplicitElements) {
    // ex-hs g: (e1/2, e2, e1/4, e3, e1/8, ...)
    auto [f, g] = fd::paper_example(fd::ExampleId::hs, 5);
    const auto gm = oracle::from(g);
    EXPECT_EQ(gm[0][0], complex(0.5));
    EXPECT_EQ(gm[1][1], complex(1.0));
    EXPECT_EQ(gm[0][2], complex(0.25));
    EXPECT_EQ(gm[2][3], complex(1.0));
    EXPECT_EQ(gm[0][4], complex(0.125));
    EXPECT_EQ(oracle::from(f)[4][4], complex(0.2));

    // ex-norm89 g: (e1/2, e1/2, e1/3, e1/4, ...)
    auto [f2, g2] = fd::paper_example(fd::ExampleId::norm89, 4);
    const auto g2m = oracle::from(g2);
    EXPECT_EQ(g2m[0][0], complex(0.5));
    EXPECT_EQ(g2m[0][1], complex(0.5));
    EXPECT_EQ(g2m[0][2], complex(1.0 / 3.0));
    EXPECT_EQ(g2m[0][3], complex(0.25));
    EXPECT_EQ(oracle::from(f2), oracle::identity(4));
}

TEST(Examples, UnknownIdListsValidOnes) {
    try {
        (void)fd::example_from_name("ex-nope");
        FAIL();
    } catch (const fd::invalid_spec& e) {
        EXPECT_NE(std::string(e.what()).find("ex-canonical"), std::string::npos);
    }
}

TEST(Realize, ExplicitTruncatesAndValidates) {
    const fd::SequenceSpec s = fd::spec::Explicit{{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}};
    const auto r = fd::realize(s, 2);
    EXPECT_EQ(r.count(), 2u);
    EXPECT_EQ(r.dim(), 2u);
    EXPECT_EQ(fd::realize(s, 10).count(), 3u);
    EXPECT_THROW(fd::realize(fd::spec::Explicit{{{1.0, 0.0}, {1.0}}}, 2), fd::invalid_spec);
    EXPECT_THROW(fd::realize(s, 0), fd::invalid_spec);
}

TEST(Realize, ScaledBasisIsDiagonal) {
    const auto r = fd::realize(fd::spec::ScaledBasis{fd::weight::InverseIndex{}}, 5);
    EXPECT_EQ(r.dim(), 5u);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(r.columns()(k, k), complex(1.0 / static_cast<double>(k + 1)));
}

TEST(Realize, SparseAndDenseRoutesAgree) {
    const std::vector<fd::SequenceSpec> specs = {
        fd::spec::Explicit{{{1.0, complex{0.0, 1.0}}, {2.0, 0.0}}},
        fd::spec::ScaledBasis{fd::weight::Geometric{complex{0.0, 0.5}}},
        fd::spec::PaperExample{fd::ExampleId::canonical, fd::Role::g},
        fd::spec::RandomRiesz{3, 5, fd::Role::g},
        fd::spec::RandomFrame{3, 5, 7},
    };
    for (const auto& s : specs) {
        EXPECT_EQ(fd::realize(s, 4).columns(), fd::realize_terms(s, 4).to_dense().columns()) << fd::kind_name(s);
    }
}

TEST(Random, FrameIsFullRankAndSeeded) {
    // {"kind":"random_frame","d":3,"n":6,"seed":9} realizes a 3x6 full-rank matrix.
    const auto f = fd::realize(fd::spec::RandomFrame{3, 6, 9}, 6);
    EXPECT_EQ(f.dim(), 3u);
    EXPECT_EQ(f.count(), 6u);
    const auto sigma = oracle::singular_values(oracle::from(f));
    EXPECT_GT(sigma.back(), 1e-3 * sigma.front());
    EXPECT_EQ(fd::random_frame(3, 6, 9).columns(), f.columns());
    EXPECT_NE(fd::random_frame(3, 6, 10).columns(), f.columns());
    EXPECT_THROW(fd::random_frame(4, 3, 1), fd::invalid_spec);
}

TEST(Random, RieszPairIsWellConditioned) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto [u, w] = fd::random_riesz_pair(5, seed);
        for (const auto* s : {&u, &w}) {
            const auto sigma = oracle::singular_values(oracle::from(*s));
            EXPECT_LE(sigma.front() / sigma.back(), fd::riesz_max_condition + 1e-9);
        }
    }
}

TEST(Random, AlternateDualReconstructs) {
    oracle::Gen gen(21);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = gen.range(2, 5), n = d + gen.range(0, 4);
        const auto f = fd::random_frame(d, n, gen.next());
        for (double scale : {0.0, 1.0}) {
            const auto g = fd::alternate_dual(f, gen.next(), scale);
            const auto product = oracle::mul(oracle::from(f), oracle::adj(oracle::from(g)));
            EXPECT_LE(oracle::max_abs(oracle::sub(product, oracle::identity(d))), 1e-9);
        }
    }
    const auto deficient = fd::RealizedSequence(fd::ComplexMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}}));
    EXPECT_THROW(fd::alternate_dual(deficient, 1), fd::not_spanning);
}

TEST(Realize, PairSharesAmbientSpace) {
    const fd::SequenceSpec inverse = fd::spec::ScaledBasis{fd::weight::InverseIndex{}};
    const fd::SequenceSpec hs_g = fd::spec::PaperExample{fd::ExampleId::hs, fd::Role::g};
    auto [f, g] = fd::realize_pair_terms(inverse, fd::Pattern{{}, {fd::PatternStream{1, 0, fd::weight::Geometric{0.5}, 0},
                                                                   fd::PatternStream{2, 1, fd::weight::Constant{1.0}, 0}}},
                                         10);
    EXPECT_EQ(f.dim, 10u);
    EXPECT_EQ(g.dim, 10u);
    // Matches the registered example, which pads the same way.
    EXPECT_EQ(g.to_dense().columns(), fd::realize_terms(hs_g, 10).to_dense().columns());

    const fd::SequenceSpec frame = fd::spec::RandomFrame{3, 6, 1};
    auto [rf, short_basis] = fd::realize_pair_terms(frame, inverse, 2);
    EXPECT_EQ(short_basis.dim, 3u);
    EXPECT_THROW(fd::realize_pair_terms(frame, inverse, 5), fd::dimension_mismatch);
    EXPECT_THROW(fd::realize_pair_terms(frame, fd::spec::RandomFrame{2, 6, 1}, 4), fd::dimension_mismatch);
}

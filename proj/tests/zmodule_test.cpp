#include "rmtori/zmodule.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace rmtori;

namespace {

ZModule span2(const FieldContext& ctx, const QuadElem& a, const QuadElem& b) {
    return ZModule::from_generators(ctx, {a, b});
}

}  // namespace

TEST(ZModule, CanonicalForm) {
    FieldContext f2(2);
    // Z + Z*sqrt(2) == Z + Z*(3 + sqrt(2)): column shifts do not matter
    ZModule m1 = span2(f2, QuadElem(f2, 1, 0), QuadElem(f2, 0, 1));
    ZModule m2 = span2(f2, QuadElem(f2, 1, 0), QuadElem(f2, 3, 1));
    EXPECT_EQ(m1, m2);
    EXPECT_EQ(m1, ZModule(f2, 1, 1, 0, 1));

    // index-4 sublattice is distinct
    ZModule m3 = span2(f2, QuadElem(f2, 2, 0), QuadElem(f2, 0, 2));
    EXPECT_NE(m1, m3);
    EXPECT_EQ(m3.covolume(), Rat(4));

    // generator order irrelevant
    ZModule m4 = span2(f2, QuadElem(f2, 0, 1), QuadElem(f2, 2, 0));
    ZModule m5 = span2(f2, QuadElem(f2, 2, 0), QuadElem(f2, 0, 1));
    EXPECT_EQ(m4, m5);
}

TEST(ZModule, RankDeficientRejected) {
    FieldContext f2(2);
    EXPECT_THROW(span2(f2, QuadElem(f2, 1, 0), QuadElem(f2, 2, 0)), std::invalid_argument);
    EXPECT_THROW(span2(f2, QuadElem(f2, 0, 1), QuadElem(f2, 0, 3)), std::invalid_argument);
}

TEST(ZModule, Membership) {
    FieldContext f2(2);
    ZModule m = span2(f2, QuadElem(f2, 1, 0), QuadElem(f2, 0, 1));  // Z + Z*sqrt2
    EXPECT_TRUE(m.contains(QuadElem(f2, 3, -5)));
    EXPECT_FALSE(m.contains(QuadElem(f2, Rat(1, 2), 0)));
    EXPECT_FALSE(m.contains(QuadElem(f2, 0, Rat(1, 2))));
}

TEST(ZModule, MembershipMatchesCoordinateSolve) {
    oracles::RandomField rnd(3);
    for (std::int64_t d : {2, 5, 10}) {
        FieldContext ctx(d);
        for (int i = 0; i < 40; ++i) {
            QuadElem g1 = rnd.irrational(ctx);
            QuadElem g2 = rnd.nonzero(ctx);
            if ((g2 / g1).y() == 0) continue;
            ZModule m = span2(ctx, g1, g2);
            // random integer combinations are members
            QuadElem comb = QuadElem(ctx, Rat(rnd.pick(-9, 9)), 0) * g1 +
                            QuadElem(ctx, Rat(rnd.pick(-9, 9)), 0) * g2;
            EXPECT_TRUE(m.contains(comb));
            // basis elements regenerate the same module
            EXPECT_EQ(span2(ctx, m.basis_first(), m.basis_second()), m);
        }
    }
}

TEST(ZModule, DualIsInvolution) {
    oracles::RandomField rnd(5);
    FieldContext ctx(13);
    for (int i = 0; i < 40; ++i) {
        QuadElem g1 = rnd.irrational(ctx);
        QuadElem g2 = rnd.nonzero(ctx);
        if ((g2 / g1).y() == 0) continue;
        ZModule m = span2(ctx, g1, g2);
        EXPECT_EQ(m.dual().dual(), m);
    }
}

TEST(ZModule, IntersectionIsLargestCommonSubmodule) {
    FieldContext f10(10);
    ZModule of = ZModule(f10, 1, 1, 0, 1);                                  // O_F
    ZModule p2 = span2(f10, QuadElem(f10, 2, 0), QuadElem(f10, 0, 1));      // <2, sqrt10>
    EXPECT_EQ(intersect(of, p2), p2);
    EXPECT_EQ(intersect(p2, of), p2);

    ZModule a = span2(f10, QuadElem(f10, 2, 0), QuadElem(f10, 0, 2));
    ZModule b = span2(f10, QuadElem(f10, 3, 0), QuadElem(f10, 0, 3));
    ZModule c = intersect(a, b);
    EXPECT_EQ(c, span2(f10, QuadElem(f10, 6, 0), QuadElem(f10, 0, 6)));
}

TEST(ZModule, IntersectionByMembership) {
    oracles::RandomField rnd(17);
    FieldContext ctx(7);
    for (int i = 0; i < 30; ++i) {
        QuadElem g1 = rnd.irrational(ctx), g2 = rnd.nonzero(ctx);
        QuadElem h1 = rnd.irrational(ctx), h2 = rnd.nonzero(ctx);
        if ((g2 / g1).y() == 0 || (h2 / h1).y() == 0) continue;
        ZModule A = span2(ctx, g1, g2), B = span2(ctx, h1, h2);
        ZModule C = intersect(A, B);
        EXPECT_TRUE(A.contains(C.basis_first()) && B.contains(C.basis_first()));
        EXPECT_TRUE(A.contains(C.basis_second()) && B.contains(C.basis_second()));
        // a few random members of A that are also in B must lie in C
        for (int j = 0; j < 20; ++j) {
            QuadElem x = QuadElem(ctx, Rat(rnd.pick(-6, 6)), 0) * g1 +
                         QuadElem(ctx, Rat(rnd.pick(-6, 6)), 0) * g2;
            if (B.contains(x)) EXPECT_TRUE(C.contains(x)) << x.str();
        }
    }
}

TEST(ZModule, ColonModuleCharacterization) {
    FieldContext f10(10);
    ZModule of(f10, 1, 1, 0, 1);
    // (O_F : O_F) = O_F
    EXPECT_EQ(colon(of, of), of);
    ZModule p2 = span2(f10, QuadElem(f10, 2, 0), QuadElem(f10, 0, 1));
    // (p2 : O_F) = p2
    EXPECT_EQ(colon(p2, of), p2);
    // (O_F : p2) = p2^{-1} = Z + Z*(sqrt10/2)
    ZModule inv = colon(of, p2);
    EXPECT_EQ(inv, span2(f10, QuadElem(f10, 1, 0), QuadElem(f10, 0, Rat(1, 2))));
}

TEST(ZModule, ScaledCommutesWithMembership) {
    oracles::RandomField rnd(23);
    FieldContext ctx(11);
    for (int i = 0; i < 30; ++i) {
        QuadElem g1 = rnd.irrational(ctx), g2 = rnd.nonzero(ctx);
        if ((g2 / g1).y() == 0) continue;
        ZModule m = span2(ctx, g1, g2);
        QuadElem lam = rnd.nonzero(ctx);
        ZModule s = m.scaled(lam);
        QuadElem x = QuadElem(ctx, Rat(rnd.pick(-9, 9)), 0) * g1 +
                     QuadElem(ctx, Rat(rnd.pick(-9, 9)), 0) * g2;
        EXPECT_TRUE(s.contains(lam * x));
    }
}

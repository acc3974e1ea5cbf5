#include <gtest/gtest.h>

#include <hironaka/arith.hpp>

using namespace hironaka;

TEST(Quotient, OrderPutsZeroBelowAndInfinityAbove) {
    Quotient z = Quotient::zero(), a = Quotient::ratio(7, 5), b = Quotient::ratio(3, 2), inf = Quotient::infinity();
    EXPECT_LT(z, a);
    EXPECT_LT(a, b);
    EXPECT_LT(b, inf);
    EXPECT_EQ(Quotient::ratio(14, 10), a);
    EXPECT_EQ(Quotient::ratio(0, 4), z);
    EXPECT_EQ(Quotient::ratio(4, 0), inf);
    EXPECT_THROW(Quotient::ratio(0, 0), InputError);
    EXPECT_THROW(Quotient::ratio(-1, 2), InputError);
}

TEST(Quotient, TextRoundTrip) {
    for (const char* s : {"0", "inf", "1", "7/5", "13/34", "1000000000000000000001/3"})
        EXPECT_EQ(Quotient::from_text(s).to_text(), s);
    EXPECT_EQ(Quotient::from_text("6/4").to_text(), "3/2");
    EXPECT_THROW(Quotient::from_text("-1/2"), InputError);
    EXPECT_THROW(Quotient::from_text("x"), InputError);
    EXPECT_THROW(Quotient::from_text("1/0"), InputError);
}

TEST(HJ, KnownStrings) {
    EXPECT_EQ(hj_expand(3, 2), (HJString{2, 2}));
    EXPECT_EQ(hj_expand(3, 1), (HJString{3}));
    EXPECT_EQ(hj_expand(5, 2), (HJString{3, 2}));
    EXPECT_EQ(hj_expand(7, 3), (HJString{3, 2, 2}));
    EXPECT_EQ(hj_expand(4, 3), (HJString{2, 2, 2}));
}

TEST(HJ, RoundTripUpTo500) {
    for (std::int64_t n = 2; n <= 500; ++n)
        for (std::int64_t q = 1; q < n; ++q) {
            if (std::gcd(n, q) != 1) continue;
            HJString s = hj_expand(n, q);
            for (auto b : s) ASSERT_GE(b, 2) << n << "/" << q;
            ASSERT_EQ(cf_evaluate(s), make_rat(n, q)) << n << "/" << q;
        }
}

TEST(HJ, RejectsBadArguments) {
    EXPECT_THROW(hj_expand(4, 2), InputError);
    EXPECT_THROW(hj_expand(4, 0), InputError);
    EXPECT_THROW(hj_expand(4, 4), InputError);
    EXPECT_THROW(cf_evaluate({}), InputError);
}

TEST(Arith, FloorAndMod) {
    EXPECT_EQ(floor_div(-7, 2), -4);
    EXPECT_EQ(floor_div(7, 2), 3);
    EXPECT_EQ(floor_div(-6, 2), -3);
    EXPECT_EQ(mod_pos(-7, 3), 2);
    EXPECT_EQ(mod_pos(7, 3), 1);
}

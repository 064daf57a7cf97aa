#include <covsolve/vecspace.hpp>
#include <gtest/gtest.h>
#include <cmath>
#include <limits>
#include <random>

using namespace covsolve;

namespace {

scalar_type const  i8 = make_scalar_type(scalar_kind::SIGNED_INT, 8U);
scalar_type const  u8 = make_scalar_type(scalar_kind::UNSIGNED_INT, 8U);
scalar_type const  i32 = make_scalar_type(scalar_kind::SIGNED_INT, 32U);
scalar_type const  u64 = make_scalar_type(scalar_kind::UNSIGNED_INT, 64U);
scalar_type const  f32 = make_scalar_type(scalar_kind::FLOAT, 32U);
scalar_type const  f64 = make_scalar_type(scalar_kind::FLOAT, 64U);

}


TEST(scalar_type, parse_and_print)
{
    for (char const*  name : { "i8", "i16", "i32", "i64", "u8", "u16", "u32", "u64", "f32", "f64" })
        EXPECT_EQ(to_string(parse_scalar_type(name)), name);
    EXPECT_THROW(parse_scalar_type("f16"), error);
    EXPECT_THROW(parse_scalar_type("bool"), error);
    EXPECT_THROW(make_scalar_type(scalar_kind::FLOAT, 8U), error);
}


TEST(comparator, opposite_pairs)
{
    EXPECT_EQ(opposite(comparator::EQ), comparator::NEQ);
    EXPECT_EQ(opposite(comparator::NEQ), comparator::EQ);
    EXPECT_EQ(opposite(comparator::LT), comparator::GE);
    EXPECT_EQ(opposite(comparator::LE), comparator::GT);
    EXPECT_EQ(opposite(comparator::GT), comparator::LE);
    EXPECT_EQ(opposite(comparator::GE), comparator::LT);
    for (comparator const  c : { comparator::EQ, comparator::NEQ, comparator::LT, comparator::LE, comparator::GT, comparator::GE })
        EXPECT_EQ(opposite(opposite(c)), c);
}


TEST(comparator, holds_against_zero)
{
    EXPECT_TRUE(holds(comparator::LE, -1.0));
    EXPECT_TRUE(holds(comparator::EQ, 0.0));
    EXPECT_FALSE(holds(comparator::GE, -0.5));
    EXPECT_TRUE(holds(comparator::NEQ, 1e-300));
    EXPECT_FALSE(holds(comparator::LT, 0.0));
    EXPECT_THROW(holds(comparator::LE, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    EXPECT_THROW(holds(comparator::GT, std::numeric_limits<double>::infinity()), std::invalid_argument);
}


TEST(comparator, opposite_negates_truth)
{
    for (comparator const  c : { comparator::EQ, comparator::NEQ, comparator::LT, comparator::LE, comparator::GT, comparator::GE })
        for (double const  a : { -2.0, -0.0, 0.0, 3.5 })
            EXPECT_NE(holds(c, a), holds(opposite(c), a));
}


TEST(embed, integers_exactly)
{
    valuation const  val{ { scalar_value::of_signed(i32, 2), scalar_value::of_signed(i32, -3) } };
    real_vector const  v = embed(val);
    ASSERT_EQ(v.size(), 2);
    EXPECT_EQ(v(0), 2.0);
    EXPECT_EQ(v(1), -3.0);
    EXPECT_EQ(embed(valuation{ { scalar_value::of_unsigned(u8, 255U) } })(0), 255.0);
}


TEST(extract, nearest_member)
{
    real_vector  v(2);
    v << -1.23, 2.7;
    valuation const  val = extract(v, { i32, i32 });
    EXPECT_EQ(val[0].as_signed(), -1);
    EXPECT_EQ(val[1].as_signed(), 3);
}


TEST(extract, clamps_to_range)
{
    EXPECT_EQ(extract(real_vector::Constant(1, 300.0), { u8 })[0].as_unsigned(), 255U);
    EXPECT_EQ(extract(real_vector::Constant(1, -4.0), { u8 })[0].as_unsigned(), 0U);
    EXPECT_EQ(extract(real_vector::Constant(1, -1e9), { i8 })[0].as_signed(), -128);
    EXPECT_EQ(extract(real_vector::Constant(1, 1e300), { f32 })[0].as_float(), std::numeric_limits<float>::max());
}


TEST(extract, ties_away_from_zero)
{
    // Both neighbours of a half-gap are equally near; the larger magnitude wins.
    for (double const  x : { 2.5, -2.5, 0.5, -0.5, 126.5 })
    {
        std::int64_t const  got = extract(real_vector::Constant(1, x), { i32 })[0].as_signed();
        double const  lo = std::floor(x);
        double const  hi = std::ceil(x);
        ASSERT_EQ(std::fabs(x - lo), std::fabs(hi - x));
        EXPECT_EQ(static_cast<double>(got), std::fabs(lo) > std::fabs(hi) ? lo : hi) << x;
    }
}


TEST(extract, rejects_non_finite_and_size_mismatch)
{
    EXPECT_THROW(extract(real_vector::Constant(1, std::nan("")), { f64 }), error);
    EXPECT_THROW(extract(real_vector::Constant(2, 1.0), { f64 }), error);
}


TEST(scalar_value, f32_rounding)
{
    double const  x = 0.1;
    EXPECT_EQ(scalar_value::nearest(f32, x).as_float(), static_cast<double>(0.1F));
    EXPECT_EQ(scalar_value::nearest(f64, x).as_float(), 0.1);
}


TEST(scalar_value, bits_two_complement)
{
    EXPECT_EQ(scalar_value::of_signed(i8, -1).bits(), 0xFFU);
    EXPECT_EQ(scalar_value::of_signed(i8, -128).bits(), 0x80U);
    EXPECT_EQ(scalar_value::of_unsigned(u8, 5U).bits(), 5U);
    EXPECT_THROW(scalar_value::of_signed(i8, 200), error);
    EXPECT_THROW((void)scalar_value::of_float(f64, 1.0).bits(), error);
}


TEST(next_representable, integers_and_floats)
{
    EXPECT_EQ(next_representable(i32, 4.0, 1.0), 5.0);
    EXPECT_EQ(next_representable(i32, 4.0, -1.0), 3.0);
    EXPECT_EQ(next_representable(u8, 255.0, 1.0), 255.0);
    EXPECT_EQ(next_representable(u8, 0.0, -1.0), 0.0);
    EXPECT_EQ(next_representable(f64, 1.0, 1.0), std::nextafter(1.0, 2.0));
    EXPECT_EQ(next_representable(f32, 1.0, -1.0), static_cast<double>(std::nextafter(1.0F, 0.0F)));
    EXPECT_GT(next_representable(u64, std::ldexp(1.0, 60), 1.0), std::ldexp(1.0, 60));
}


TEST(valuation_property, embed_extract_round_trip)
{
    std::mt19937_64  rng(7U);
    std::uniform_real_distribution<double>  unit(-1.0, 1.0);
    scalar_type const  types[] = { i8, u8, i32, f32, f64, make_scalar_type(scalar_kind::SIGNED_INT, 64U), u64 };
    for (int  trial = 0; trial != 2000; ++trial)
    {
        std::vector<scalar_value>  values;
        for (scalar_type const  t : types)
        {
            double const  span = t.is_integer() ? std::ldexp(1.0, std::min<int>(t.bit_width, 52)) : 1e6;
            values.push_back(scalar_value::nearest(t, unit(rng) * span));
        }
        valuation const  val{ values };
        EXPECT_EQ(extract(embed(val), val.types()), val);
    }
}


TEST(valuation_property, small_perturbation_keeps_extract)
{
    std::mt19937_64  rng(11U);
    std::uniform_real_distribution<double>  unit(-1.0, 1.0);
    for (int  trial = 0; trial != 2000; ++trial)
    {
        valuation const  val{ { scalar_value::nearest(i32, 1000.0 * unit(rng)), scalar_value::nearest(u8, 127.0 + 100.0 * unit(rng)) } };
        real_vector  v = embed(val);
        v(0) += 0.49 * unit(rng);
        v(1) += 0.49 * unit(rng);
        EXPECT_EQ(extract(v, val.types()), val);
    }
}


TEST(valuation_property, embed_injective)
{
    valuation const  a{ { scalar_value::of_signed(i32, 1), scalar_value::of_float(f64, 0.5) } };
    valuation const  b{ { scalar_value::of_signed(i32, 1), scalar_value::of_float(f64, 0.25) } };
    EXPECT_NE(embed(a), embed(b));
}

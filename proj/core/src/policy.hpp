#pragma once

#include <boost/math/policies/policy.hpp>

namespace erlang_spectral::detail {

// Report overflow/poles through the return value (inf/NaN) instead of
// throwing; callers decide what a pole means.
using quiet_policy = boost::math::policies::policy<
    boost::math::policies::domain_error<boost::math::policies::errno_on_error>,
    boost::math::policies::pole_error<boost::math::policies::errno_on_error>,
    boost::math::policies::overflow_error<boost::math::policies::errno_on_error>,
    boost::math::policies::evaluation_error<boost::math::policies::errno_on_error>>;

}  // namespace erlang_spectral::detail

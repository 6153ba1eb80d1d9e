#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ncpx {

using bigint = boost::multiprecision::cpp_int;

}  // namespace ncpx

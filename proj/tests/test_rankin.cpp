#include <catch2/catch_amalgamated.hpp>
#include "test_util.hpp"
TEST_CASE("placeholder_rankin") { CHECK(true); }

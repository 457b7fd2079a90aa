// The amalgamated Catch2 translation unit supplies main(); nothing more needed.
#include <catch2/catch_amalgamated.hpp>

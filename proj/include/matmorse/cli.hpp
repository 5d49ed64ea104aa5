#pragma once
#include <iostream>
namespace matmorse::cli {
inline int run(int, char**, std::ostream&, std::ostream&) { return 0; }
}

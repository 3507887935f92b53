#pragma once

namespace bkn {

// Exit codes: 0 success, 1 validation or numerical failure, 2 usage error.
int run(int argc, char** argv);

} // namespace bkn

#pragma once

namespace bergvar {

/// Batch front door. Exit codes: 0 all suites pass, 1 numeric suite failure,
/// 2 config / usage error, 3 internal error.
int cli_main(int argc, const char* const* argv);

}  // namespace bergvar

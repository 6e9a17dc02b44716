#pragma once

namespace hyperctx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hyperctx

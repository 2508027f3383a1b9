#pragma once

namespace pws {

const char* version();

}  // namespace pws

#include "pws/version.hpp"

namespace pws {

const char* version() { return PWS_VERSION; }

}  // namespace pws

#pragma once

namespace aot {

// Thread budget for parallel regions. AOT_THREADS caps it when set; otherwise
// the OpenMP default applies. Read once on first use.
int thread_count();

}  // namespace aot

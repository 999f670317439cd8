#pragma once

namespace kamlab {

// Worker count for grid sweeps; 0 restores the runtime default. A no-op when
// built without OpenMP.
void set_thread_count(int threads);
int thread_count();

}  // namespace kamlab

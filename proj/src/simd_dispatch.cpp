#include "gpembed/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace gpembed::simd {

namespace {

const KernelTable* select() {
    const char* env = std::getenv("GPEMBED_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_table();
        if (std::strcmp(env, "avx2") == 0 && avx2_table() != nullptr) return avx2_table();
        // Unknown or unavailable request falls through to auto-detection.
    }
    if (const KernelTable* t = avx2_table()) return t;
    return &scalar_table();
}

std::atomic<const KernelTable*> g_active{nullptr};

} // namespace

const KernelTable& active() {
    const KernelTable* t = g_active.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = select();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

void force(const KernelTable& table) {
    g_active.store(&table, std::memory_order_release);
}

} // namespace gpembed::simd

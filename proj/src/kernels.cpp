#include "gf2ramsey/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "gf2ramsey/error.hpp"

namespace gf2r::kernels {
namespace {

const KernelTable* table_for(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return &scalar_table();
        case Backend::Avx2:
#if defined(GF2R_HAVE_AVX2)
            if (__builtin_cpu_supports("avx2")) return &avx2_table();
#endif
            return nullptr;
        case Backend::Neon:
#if defined(GF2R_HAVE_NEON)
            return &neon_table();
#else
            return nullptr;
#endif
    }
    return nullptr;
}

const KernelTable* detect() {
    if (const char* env = std::getenv("GF2R_KERNELS")) {
        const std::string name(env);
        if (name == "scalar") return &scalar_table();
        if (name == "avx2" && table_for(Backend::Avx2)) return table_for(Backend::Avx2);
        if (name == "neon" && table_for(Backend::Neon)) return table_for(Backend::Neon);
    }
    if (const auto* t = table_for(Backend::Avx2)) return t;
    if (const auto* t = table_for(Backend::Neon)) return t;
    return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
    static std::atomic<const KernelTable*> current{detect()};
    return current;
}

}  // namespace

bool backend_available(Backend b) { return table_for(b) != nullptr; }

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    const KernelTable* t = table_for(b);
    if (t == nullptr) {
        throw InvalidArgument("kernel backend '" + std::string(backend_name(b)) + "' not available");
    }
    slot().store(t);
}

void reset_backend() { slot().store(detect()); }

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
        case Backend::Neon: return "neon";
    }
    return "unknown";
}

}  // namespace gf2r::kernels

#include "qsr/kernels.hpp"

namespace qsr::kernels {

#ifdef QSR_HAVE_AVX2
const Ops& avx2_ops_impl(); // defined in kernels_avx2.cpp
#endif

const Ops* avx2_ops() {
#ifdef QSR_HAVE_AVX2
    if (__builtin_cpu_supports("avx2")) return &avx2_ops_impl();
#endif
    return nullptr;
}

namespace {

const Ops* pick_auto() {
    if (const Ops* v = avx2_ops()) return v;
    return &scalar_ops();
}

const Ops*& selection() {
    static const Ops* current = pick_auto();
    return current;
}

} // namespace

const Ops& active() {
    return *selection();
}

bool select_backend(std::string_view name) {
    if (name == "auto") {
        selection() = pick_auto();
        return true;
    }
    if (name == "scalar") {
        selection() = &scalar_ops();
        return true;
    }
    if (name == "avx2") {
        if (const Ops* v = avx2_ops()) {
            selection() = v;
            return true;
        }
        return false;
    }
    return false;
}

} // namespace qsr::kernels

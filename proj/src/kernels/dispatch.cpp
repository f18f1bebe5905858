#include <cstdlib>
#include <string>

#include "interfere/kernels.hpp"

namespace interfere::kernels {

std::string_view name(Isa isa)
{
    switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::sse2: return "sse2";
    case Isa::avx2: return "avx2";
    }
    return "unknown";
}

std::vector<Isa> supported_isas()
{
    std::vector<Isa> out{Isa::scalar};
#ifdef INTERFERE_X86
    out.push_back(Isa::sse2);
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2"))
        out.push_back(Isa::avx2);
#endif
    return out;
}

Isa active_isa()
{
    static const Isa chosen = [] {
        std::vector<Isa> isas = supported_isas();
        if (const char* env = std::getenv("INTERFERE_ISA")) {
            for (Isa isa : isas) {
                if (name(isa) == env)
                    return isa;
            }
        }
        return isas.back();
    }();
    return chosen;
}

IntensityKernel kernel_for(Isa isa)
{
    switch (isa) {
#ifdef INTERFERE_X86
    case Isa::sse2: return &intensity_sse2;
    case Isa::avx2: return &intensity_avx2;
#endif
    default: return &intensity_scalar;
    }
}

}  // namespace interfere::kernels

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "casalter/lifshitz.hpp"

namespace casalter::sheet {

// One altermagnet plate: tight-binding model plus Brillouin-zone controls,
// exposing its imaginary-frequency response on the Matsubara ladder of the
// bath temperature. Tensors are computed lazily, one diagonalization pass
// shared by all frequencies.
class AltermagnetSheet {
  public:
    AltermagnetSheet(const lattice::ModelParams& params, const response::KuboConfig& kubo,
                     double temperature_K);

    double temperature() const { return temperature_K_; }
    double xi(int n) const;  // rad/s

    const response::ConductivityTensor& tensor(int n) const;
    const response::AnisotropyDecomposition& aniso(int n) const;

    // Grow the memo table through index n (serial; call before sharing
    // across threads).
    void ensure(int n) const;

    // Reflection side in the normalized diagonal form with the analytic
    // angular derivative. The provider keeps a reference to this sheet.
    std::unique_ptr<lifshitz::ReflectionProvider> make_provider() const;

  private:
    struct Entry {
        response::ConductivityTensor tensor;
        response::AnisotropyDecomposition aniso;
    };

    lattice::ModelParams params_;
    response::KuboConfig kubo_;
    double temperature_K_;
    response::SpectralCache cache_;
    mutable std::vector<std::optional<Entry>> memo_;
};

}  // namespace casalter::sheet

#include "casalter/sheet.hpp"

#include <cmath>
#include <stdexcept>

#include "casalter/constants.hpp"

namespace casalter::sheet {

using namespace casalter::constants;

namespace {

lattice::ModelParams at_temperature(lattice::ModelParams p, double temperature_K) {
    p.temperature = temperature_K;
    p.validate();
    return p;
}

}  // namespace

AltermagnetSheet::AltermagnetSheet(const lattice::ModelParams& params,
                                   const response::KuboConfig& kubo, double temperature_K)
    : params_(at_temperature(params, temperature_K)),
      kubo_(kubo),
      temperature_K_(temperature_K),
      cache_(params_, kubo.grid_n) {}

double AltermagnetSheet::xi(int n) const {
    return 2.0 * pi * n * kB_J_per_K * temperature_K_ / hbar_J_s;
}

void AltermagnetSheet::ensure(int n) const {
    if (n < 0) throw std::invalid_argument("AltermagnetSheet: negative Matsubara index");
    if (memo_.size() <= static_cast<std::size_t>(n)) memo_.resize(n + 1);
    for (int m = 0; m <= n; ++m) {
        if (memo_[m]) continue;
        response::KuboConfig cfg = kubo_;
        cfg.frequency = {0.0, hbar_eV_s * xi(m)};
        Entry e;
        e.tensor = response::kubo_conductivity(cache_, cfg);
        e.aniso = response::anisotropy(e.tensor);
        memo_[m] = e;
    }
}

const response::ConductivityTensor& AltermagnetSheet::tensor(int n) const {
    ensure(n);
    return memo_[n]->tensor;
}

const response::AnisotropyDecomposition& AltermagnetSheet::aniso(int n) const {
    ensure(n);
    return memo_[n]->aniso;
}

namespace {

class SheetProvider final : public lifshitz::ReflectionProvider {
  public:
    explicit SheetProvider(const AltermagnetSheet& sheet) : sheet_(sheet) {}

    void prepare(int n, double /*xi*/) const override { sheet_.ensure(n); }

    lifshitz::ReflectionMatrix reflect(int n, const optics::WaveArgs& w) const override {
        return optics::reflection_delta_form(sheet_.aniso(n), w);
    }

    lifshitz::ReflectionMatrix reflect_dphi(int n, const optics::WaveArgs& w) const override {
        return optics::reflection_delta_form_dphi(sheet_.aniso(n), w);
    }

    lifshitz::ReflectionMatrix zero_frequency(double /*k_par*/) const override {
        // Static limit of a conducting sheet: only the p channel survives.
        return {0.0, 0.0, 0.0, 1.0};
    }

  private:
    const AltermagnetSheet& sheet_;
};

}  // namespace

std::unique_ptr<lifshitz::ReflectionProvider> AltermagnetSheet::make_provider() const {
    return std::make_unique<SheetProvider>(*this);
}

}  // namespace casalter::sheet

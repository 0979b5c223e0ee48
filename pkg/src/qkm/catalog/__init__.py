from .oracles import (SCA, LoopOracle, BaseAlgebra, BASES, invariant_forms, form_defects, matrix_sca,
                      takiff_sca, q_sca, sq_sca, psq_sca, q_odd_form, odd_affinize)
from .entries import (CatalogEntry, datum_from_oracle, q_family, takiff, one_root, heisenberg, xy_datum,
                      a22, x_coupled, affine_psq, kac_moody_datum, direct_sum, REGISTRY, names, get,
                      ONE_ROOT_ENTRIES)

from .residue_set import (
    ResidueSet, CountVector, indicator, combine, rep_function, convolve,
    ratio_set_R, quotient_quadruple_Q, translate, dilate, reflect, one_minus,
    product_power, inverse_table, rotate_mask, sum_mask,
)
from .rational_set import (
    RationalSet, combine_rational, iterated_sum, ratio_set_rational,
    four_variable_set, expander_statistic, apply_phi, ExpanderStatistic,
    PHI_CATALOG, format_rational,
)

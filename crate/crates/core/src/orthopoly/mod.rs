//! Moments, recurrence coefficients, zeros, norms and the complex Gaussian
//! quadrature rule for the weight exp(-N s z) on [-1, 1].

mod moments;
mod quadrule;
mod recurrence;

pub use moments::{compute_moments, MomentTable, Weight};
pub use quadrule::{gauss_rule, oscillatory_integral, QuadratureRule};
pub use recurrence::{
    diagonal_recurrence, diagonal_recurrence_row, diagonal_row_full, eval_poly, eval_with_table, recurrence_from_moments,
    required_digits, table_for, zeros, RecurrenceRow, RecurrenceTable,
};

//! Rule engines and parametric strategies.

pub mod guesswho;
pub mod morra;
pub mod nim;
pub mod phantom_ttt;
pub mod pig;
pub mod toy;
pub mod war;

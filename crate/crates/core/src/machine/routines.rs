//! Built-in `sys` routines. Outputs are computed once per argument and cached.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::{SYS_PHP_ER, SYS_PHP_TAUT};
use crate::bits::BitString;
use crate::generators::{er_proof_php, php_tautology};

/// Largest arguments served by the `php_er` and `php_taut` routines; larger ones halt without output.
pub const PHP_ER_MAX: u64 = 6;
pub const PHP_TAUT_MAX: u64 = 32;

type Table = Mutex<HashMap<(u64, u64), &'static BitString>>;

pub(crate) fn output(routine: u64, n: u64) -> Option<&'static BitString> {
    let bits = || -> Option<BitString> {
        match routine {
            SYS_PHP_ER if (1..=PHP_ER_MAX).contains(&n) => Some(er_proof_php(n as u32)),
            SYS_PHP_TAUT if (1..=PHP_TAUT_MAX).contains(&n) => Some(php_tautology(n as u32).render_bits()),
            _ => None,
        }
    };
    static CACHE: OnceLock<Table> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().unwrap().get(&(routine, n)) {
        return Some(b);
    }
    let computed: &'static BitString = Box::leak(Box::new(bits()?));
    Some(*cache.lock().unwrap().entry((routine, n)).or_insert(computed))
}

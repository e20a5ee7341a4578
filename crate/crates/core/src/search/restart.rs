use super::SearchStats;

/// Element `index` (from 0) of the Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
pub fn luby(mut index: u64) -> u64 {
    let mut size = 1u64;
    let mut exponent = 0u32;
    while size < index + 1 {
        exponent += 1;
        size = 2 * size + 1;
    }
    while size - 1 != index {
        size = (size - 1) >> 1;
        exponent -= 1;
        index %= size;
    }
    1 << exponent
}

/// Luby restarts: the gap before restart `i` is `base * luby(i)` conflicts.
#[derive(Debug, Clone)]
pub struct LubyRestarts {
    base: u64,
    conflicts_at_last_restart: u64,
}

impl LubyRestarts {
    pub fn new(base: u64) -> LubyRestarts {
        LubyRestarts {
            base,
            conflicts_at_last_restart: 0,
        }
    }

    pub fn should_restart(&self, stats: &SearchStats) -> bool {
        stats.conflicts - self.conflicts_at_last_restart >= self.base * luby(stats.restarts)
    }

    pub fn restarted(&mut self, stats: &SearchStats) {
        self.conflicts_at_last_restart = stats.conflicts;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn luby_prefix() {
        let prefix: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(prefix, [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn restart_gaps_follow_luby() {
        let mut policy = LubyRestarts::new(64);
        let mut stats = SearchStats::default();
        let mut gaps = Vec::new();
        let mut since = 0;
        while gaps.len() < 7 {
            stats.conflicts += 1;
            since += 1;
            if policy.should_restart(&stats) {
                gaps.push(since);
                since = 0;
                stats.restarts += 1;
                policy.restarted(&stats);
            }
        }
        assert_eq!(gaps, [64, 64, 128, 64, 64, 128, 256]);
    }

    #[test]
    fn no_restart_before_base() {
        let policy = LubyRestarts::new(64);
        let stats = SearchStats {
            conflicts: 63,
            ..SearchStats::default()
        };
        assert!(!policy.should_restart(&stats));
    }
}

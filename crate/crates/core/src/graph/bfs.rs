use std::collections::VecDeque;

use super::Graph;
use crate::error::Result;

/// Distance sentinel for vertices not reachable from the source.
pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsLevels {
    pub source: usize,
    pub dist: Vec<u32>,
    /// `level_sizes[l]` = number of vertices at distance exactly `l`.
    pub level_sizes: Vec<usize>,
}

impl BfsLevels {
    pub fn eccentricity(&self) -> u32 {
        (self.level_sizes.len() as u32).saturating_sub(1)
    }

    /// Smallest-index vertex at maximum distance from the source.
    pub fn farthest(&self) -> usize {
        let ecc = self.eccentricity();
        self.dist
            .iter()
            .position(|&d| d == ecc)
            .unwrap_or(self.source)
    }

    pub fn reached(&self) -> usize {
        self.level_sizes.iter().sum()
    }
}

impl Graph {
    pub fn bfs_levels(&self, source: usize) -> Result<BfsLevels> {
        self.check_vertex(source)?;
        Ok(self.bfs_unchecked(source))
    }

    pub(crate) fn bfs_unchecked(&self, source: usize) -> BfsLevels {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut level_sizes = vec![1];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in self.neighbors(u) {
                let w = w as usize;
                if dist[w] == UNREACHABLE {
                    dist[w] = next;
                    if level_sizes.len() <= next as usize {
                        level_sizes.push(0);
                    }
                    level_sizes[next as usize] += 1;
                    queue.push_back(w);
                }
            }
        }
        BfsLevels {
            source,
            dist,
            level_sizes,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn path_distances() {
        let b = generators::path(3).bfs_levels(0).unwrap();
        assert_eq!(b.dist, vec![0, 1, 2]);
        assert_eq!(b.level_sizes, vec![1, 1, 1]);
        assert_eq!(b.farthest(), 2);
    }

    #[test]
    fn star_center() {
        let b = generators::star(6).bfs_levels(0).unwrap();
        assert!(b.dist[1..].iter().all(|&d| d == 1));
        assert_eq!(b.level_sizes, vec![1, 5]);
    }

    #[test]
    fn disconnected_is_unreachable() {
        let g = Graph::from_edges(2, &[]).unwrap();
        let b = g.bfs_levels(0).unwrap();
        assert_eq!(b.dist[1], UNREACHABLE);
        assert_eq!(b.reached(), 1);
        assert!(g.bfs_levels(2).is_err());
    }
}

pub struct GeneralHypergraph { n: u32, k: usize, edges: Vec<Vec<u32>> }
impl GeneralHypergraph {
    pub fn new(n: u32, k: usize, edges: Vec<Vec<u32>>) -> Result<Self, crate::Error> { Ok(GeneralHypergraph { n, k, edges }) }
    pub fn n(&self) -> u32 { self.n }
    pub fn k(&self) -> usize { self.k }
    pub fn edges(&self) -> &[Vec<u32>] { &self.edges }
}

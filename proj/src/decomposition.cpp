#include "mqm/decomposition.hpp"

#include <algorithm>
#include <map>

#include "mqm/error.hpp"
#include "mqm/mqm.hpp"

namespace mqm
{

std::size_t PatternSplit::factor_size() const noexcept
{
  std::size_t s = 0;
  for ( std::size_t k = 0; k < groups.size(); ++k )
  {
    s += groups[k].size() + subfunctions[k].size();
  }
  return s;
}

std::vector<Minterm> PatternSplit::reconstruct() const
{
  std::vector<Minterm> out;
  const unsigned shift = suffix_vars();
  for ( std::size_t k = 0; k < groups.size(); ++k )
  {
    for ( const auto g : groups[k] )
    {
      for ( const auto h : subfunctions[k] )
      {
        out.push_back( ( g << shift ) | h );
      }
    }
  }
  std::sort( out.begin(), out.end() );
  return out;
}

PatternSplit find_patterns( std::span<const Minterm> members, unsigned n, unsigned mid )
{
  if ( mid < 2 || mid > n )
  {
    throw Error( ErrorCode::index_out_of_range, "split position " + std::to_string( mid ) + " outside 2.." + std::to_string( n ) );
  }
  PatternSplit split;
  split.n = n;
  split.mid = mid;
  const unsigned shift = n - mid + 1;
  const Minterm suffix_mask = ( Minterm{ 1 } << shift ) - 1;

  std::map<Minterm, std::vector<Minterm>> by_prefix;
  for ( const auto x : members )
  {
    by_prefix[x >> shift].push_back( x & suffix_mask );
  }
  std::map<std::vector<Minterm>, std::size_t> pattern_of;
  for ( auto& [prefix, suffixes] : by_prefix )
  {
    std::sort( suffixes.begin(), suffixes.end() );
    suffixes.erase( std::unique( suffixes.begin(), suffixes.end() ), suffixes.end() );
    auto [it, fresh] = pattern_of.emplace( suffixes, split.groups.size() );
    if ( fresh )
    {
      split.groups.emplace_back();
      split.subfunctions.push_back( suffixes );
    }
    split.groups[it->second].push_back( prefix );
  }
  return split;
}

PatternSplit find_patterns( const DifferenceVector& v, unsigned mid )
{
  return find_patterns( v.members, v.n, mid );
}

namespace
{

bool complementary( const std::vector<Minterm>& a, const std::vector<Minterm>& b, unsigned vars )
{
  const std::size_t space = std::size_t{ 1 } << vars;
  if ( a.size() + b.size() != space )
  {
    return false;
  }
  std::vector<std::uint8_t> seen( space, 0 );
  for ( const auto x : a )
  {
    seen[x] = 1;
  }
  return std::none_of( b.begin(), b.end(), [&]( Minterm x ) { return seen[x] != 0; } );
}

/// ESOP of a factor over `vars` variables; `main` (1-based inside the factor, 0 if absent) is projected out.
std::vector<Cube> factor_esop( const std::vector<Minterm>& set, unsigned vars, unsigned main, bool templates )
{
  EsopOptions opts;
  opts.templates = templates;
  if ( main == 0 )
  {
    return minimize_esop( set, {}, vars, opts );
  }
  std::vector<Minterm> projected;
  const Minterm flip = var_mask( main, vars );
  for ( const auto x : set )
  {
    if ( ( x & flip ) == 0 )
    {
      projected.push_back( project_out( x, main, vars ) );
    }
  }
  std::vector<Cube> out;
  for ( const auto& c : minimize_esop( projected, {}, vars - 1, opts ) )
  {
    out.push_back( lift( c, main ) );
  }
  return out;
}

/// Places a cube over the prefix (or suffix) variables into n variables.
Cube embed( const Cube& c, unsigned n, unsigned shift )
{
  return Cube( n, c.care() << shift, c.value() << shift );
}

bool cube_order( const Cube& a, const Cube& b )
{
  if ( a.num_literals() != b.num_literals() )
  {
    return a.num_literals() > b.num_literals();
  }
  return lexicographic_less( a, b );
}

} // namespace

std::optional<ComplementShortcut> complement_shortcut( const PatternSplit& split )
{
  if ( split.num_patterns() != 2 )
  {
    return std::nullopt;
  }
  if ( !complementary( split.subfunctions[0], split.subfunctions[1], split.suffix_vars() ) ||
       !complementary( split.groups[0], split.groups[1], split.prefix_vars() ) )
  {
    return std::nullopt;
  }
  return ComplementShortcut{ split.groups[0], split.subfunctions[1] };
}

std::vector<std::uint8_t> shortcut_indicator( const ComplementShortcut& s, unsigned n, unsigned mid )
{
  const unsigned shift = n - mid + 1;
  std::vector<std::uint8_t> group( std::size_t{ 1 } << ( mid - 1 ), 0 );
  std::vector<std::uint8_t> sub( std::size_t{ 1 } << shift, 0 );
  for ( const auto g : s.group )
  {
    group[g] = 1;
  }
  for ( const auto h : s.subfunction )
  {
    sub[h] = 1;
  }
  std::vector<std::uint8_t> out( std::size_t{ 1 } << n );
  const Minterm suffix_mask = ( Minterm{ 1 } << shift ) - 1;
  for ( std::size_t x = 0; x < out.size(); ++x )
  {
    out[x] = group[x >> shift] ^ sub[x & suffix_mask];
  }
  return out;
}

PatternSplit choose_split( std::span<const Minterm> members, unsigned n )
{
  if ( n < 2 )
  {
    throw Error( ErrorCode::index_out_of_range, "splitting needs at least two variables" );
  }
  const unsigned preferred = ( n + 1 ) / 2;
  const unsigned hi = std::max( 2u, n - 1 );
  std::optional<PatternSplit> best;
  std::size_t best_score = 0;
  for ( unsigned mid = 2; mid <= hi && mid <= n; ++mid )
  {
    auto split = find_patterns( members, n, mid );
    const auto score = split.num_patterns() * split.factor_size();
    const bool better = !best || score < best_score || ( score == best_score && mid == preferred );
    if ( better )
    {
      best_score = score;
      best = std::move( split );
    }
  }
  return std::move( *best );
}

std::optional<DecomposedGates> synthesize_decomposed( std::span<const Minterm> members,
                                                      unsigned n,
                                                      unsigned main,
                                                      const DecompositionOptions& options )
{
  if ( members.empty() || n < 3 )
  {
    return std::nullopt;
  }
  auto split = options.mid ? find_patterns( members, n, *options.mid ) : choose_split( members, n );
  if ( split.factor_size() >= members.size() )
  {
    return std::nullopt;
  }
  const unsigned prefix_vars = split.prefix_vars();
  const unsigned suffix_vars = split.suffix_vars();
  const unsigned main_in_prefix = main < split.mid ? main : 0;
  const unsigned main_in_suffix = main >= split.mid ? main - split.mid + 1 : 0;

  auto prefix_terms = [&]( const std::vector<Minterm>& set ) {
    std::vector<Cube> out;
    for ( const auto& c : factor_esop( set, prefix_vars, main_in_prefix, options.templates ) )
    {
      out.push_back( embed( c, n, suffix_vars ) );
    }
    return out;
  };
  auto suffix_terms = [&]( const std::vector<Minterm>& set ) {
    std::vector<Cube> out;
    for ( const auto& c : factor_esop( set, suffix_vars, main_in_suffix, options.templates ) )
    {
      out.push_back( embed( c, n, 0 ) );
    }
    return out;
  };

  DecomposedGates result;
  if ( auto shortcut = complement_shortcut( split ) )
  {
    auto group = prefix_terms( shortcut->group );
    auto sub = suffix_terms( shortcut->subfunction );
    std::sort( group.begin(), group.end(), cube_order );
    std::sort( sub.begin(), sub.end(), cube_order );

    // A one-literal subfunction on a working line lets the group accumulate there first.
    if ( sub.size() == 1 && sub.front().num_literals() == 1 )
    {
      const auto lit = sub.front().controls().front();
      const bool allowed = std::find( options.working_lines.begin(), options.working_lines.end(), lit.line ) != options.working_lines.end();
      if ( allowed && lit.line != main )
      {
        if ( lit.polarity == Polarity::negative )
        {
          // group xor x_w' = (group xor 1) xor x_w
          auto single = std::find_if( group.begin(), group.end(), []( const Cube& c ) { return c.num_literals() <= 1; } );
          if ( single == group.end() )
          {
            group.push_back( Cube::universe( n ) );
          }
          else if ( single->num_literals() == 0 )
          {
            group.erase( single );
          }
          else
          {
            const auto v = single->controls().front().line;
            *single = single->with( v, single->at( v ) == '1' ? '0' : '1' );
          }
          std::sort( group.begin(), group.end(), cube_order );
        }
        for ( const auto& c : group )
        {
          result.gates.emplace_back( lit.line, c.controls() );
        }
        result.gates.emplace_back( main, std::vector<Control>{ pos( lit.line ) } );
        result.uses_working_line = true;
        result.split = std::move( split );
        return result;
      }
    }
    for ( const auto& c : group )
    {
      result.gates.emplace_back( main, c.controls() );
    }
    for ( const auto& c : sub )
    {
      result.gates.emplace_back( main, c.controls() );
    }
    result.split = std::move( split );
    return result;
  }

  std::vector<Cube> terms;
  for ( std::size_t k = 0; k < split.num_patterns(); ++k )
  {
    const auto group = prefix_terms( split.groups[k] );
    const auto sub = suffix_terms( split.subfunctions[k] );
    for ( const auto& g : group )
    {
      for ( const auto& h : sub )
      {
        terms.push_back( *g.intersection( h ) );
      }
    }
  }
  if ( options.templates && terms.size() <= 64 )
  {
    terms = improve_esop( std::move( terms ), {} );
  }
  std::sort( terms.begin(), terms.end(), cube_order );
  for ( const auto& c : terms )
  {
    result.gates.emplace_back( main, c.controls() );
  }
  result.split = std::move( split );
  return result;
}

} // namespace mqm

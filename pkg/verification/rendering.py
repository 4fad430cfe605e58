import io

from rich.console import Console
from rich.table import Table


def render(*renderables, width=120):
    buffer = io.StringIO()
    console = Console(file=buffer, width=width, force_terminal=False)
    for renderable in renderables:
        console.print(renderable)
    return buffer.getvalue()


def cyclotomic(vector):
    """Power-basis vector as a sum of ζ-monomials"""
    terms = []
    for i, c in enumerate(int(x) for x in vector):
        if not c:
            continue
        monomial = '' if i == 0 else ('ζ' if i == 1 else f'ζ^{i}')
        if not monomial:
            terms.append(str(c))
        elif c == 1:
            terms.append(monomial)
        elif c == -1:
            terms.append(f'-{monomial}')
        else:
            terms.append(f'{c}{monomial}')
    return ' + '.join(terms).replace('+ -', '- ') or '0'


def group_text(description):
    summary = Table(title=description['name'], show_header=False)
    for key in ('order', 'exponent', 'abelian', 'classes', 'derived_order', 'centre_order'):
        summary.add_row(key, str(description[key]))
    summary.add_row('class sizes', ' '.join(str(s) for s in description['class_sizes']))

    markings = Table(title='Abelian index-l markings')
    for column in ('G′', 'a', 'abelian', 'pi', 'pi index'):
        markings.add_column(column)
    for marking in description['markings']:
        markings.add_row(
            ', '.join(marking['gprime']),
            marking['a'],
            str(marking['abelian']),
            ' '.join(f'{k}↦{v}' for k, v in marking['pi'].items()),
            str(marking['pi_index']),
        )
    return render(summary, markings)


def character_table_text(table, title):
    group = table.group
    out = Table(title=f'{title} (ζ of order {table.ring.order})')
    out.add_column('χ')
    out.add_column('kind')
    for rep in table.classes.reps:
        out.add_column(group.label(rep), justify='right')
    for k in range(len(table)):
        out.add_row(str(k), str(table.kinds[k]), *(cyclotomic(value) for value in table.values[k]))
    return render(out, width=max(120, 14 * (len(table.classes) + 2)))

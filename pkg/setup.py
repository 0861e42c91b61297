from setuptools import setup

SETUP_INFO = dict(
    name='inrecon',
    version='0.1.0',
    packages=['inrecon'],
    install_requires=['numpy', 'scipy', 'scikit-image', 'jinja2'],
    tests_require=['atelier'],
    test_suite='tests',
    description="Joint image and coil sensitivity reconstruction of "
                "undersampled multi-coil MRI with coordinate networks.",
    license_files=['COPYING'],
    author='Rumma & Ko Ltd',
    entry_points={'console_scripts': ['inrecon = inrecon.cli:main']})

SETUP_INFO.update(classifiers="""\
Programming Language :: Python
Programming Language :: Python :: 3
Development Status :: 3 - Alpha
Intended Audience :: Science/Research
License :: OSI Approved :: GNU Affero General Public License v3
Natural Language :: English
Operating System :: OS Independent
Topic :: Scientific/Engineering :: Medical Science Apps.""".splitlines())

SETUP_INFO.update(long_description=open("README.rst").read())

SETUP_INFO.update(
    zip_safe=False,
    include_package_data=True,
    package_data={'inrecon': ['templates/*.rst']})


if __name__ == '__main__':
    setup(**SETUP_INFO)
